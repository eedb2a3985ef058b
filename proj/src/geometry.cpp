#include "cechpix/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "cechpix/errors.hpp"

namespace cechpix {

PointCloud::PointCloud(const std::vector<Coords>& rows) {
  if (rows.empty()) return;
  dim_ = rows.front().size();
  if (dim_ == 0) throw ValidationError("points must have at least one coordinate");
  coords_.reserve(rows.size() * dim_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim_)
      throw ValidationError("point " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                            " coordinates, expected " + std::to_string(dim_));
    coords_.insert(coords_.end(), rows[i].begin(), rows[i].end());
  }
  validate();
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> flat) : dim_(dim), coords_(std::move(flat)) {
  if (dim_ == 0 && !coords_.empty()) throw ValidationError("dimension must be positive");
  if (dim_ != 0 && coords_.size() % dim_ != 0) throw ValidationError("coordinate count is not a multiple of dim");
  validate();
}

void PointCloud::validate() const {
  for (double c : coords_)
    if (!std::isfinite(c)) throw ValidationError("non-finite coordinate");
  std::vector<std::size_t> order(size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto row_less = [&](std::size_t a, std::size_t b) {
    auto pa = (*this)[a], pb = (*this)[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), row_less);
  for (std::size_t i = 1; i < order.size(); ++i) {
    auto pa = (*this)[order[i - 1]], pb = (*this)[order[i]];
    if (std::equal(pa.begin(), pa.end(), pb.begin()))
      throw ValidationError("duplicate point: ids " + std::to_string(std::min(order[i - 1], order[i])) + " and " +
                            std::to_string(std::max(order[i - 1], order[i])));
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) { return std::sqrt(squared_distance(a, b)); }

double PointCloud::distance(std::size_t i, std::size_t j) const { return cechpix::distance((*this)[i], (*this)[j]); }

double PointCloud::diameter() const {
  double best = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) best = std::max(best, squared_distance((*this)[i], (*this)[j]));
  return std::sqrt(best);
}

double PointCloud::min_distance() const {
  if (size() < 2) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) best = std::min(best, squared_distance((*this)[i], (*this)[j]));
  return std::sqrt(best);
}

// ---------------------------------------------------------------------------
// Minimum enclosing ball (move-to-front support-set recursion)

namespace {

using PointRef = std::span<const double>;

bool inside(const Ball& b, PointRef p) {
  if (b.radius < 0) return false;
  double r2 = b.radius * b.radius;
  return squared_distance(b.center, p) <= r2 * (1.0 + 1e-12) + 1e-300;
}

double support_radius(const Coords& c, const std::vector<PointRef>& support) {
  double r2 = 0.0;
  for (auto p : support) r2 = std::max(r2, squared_distance(c, p));
  return std::sqrt(r2);
}

// Circumscribed ball of an affinely independent support set, centered in its
// affine hull. Returns false when the Gram system is numerically singular.
bool circumball(const std::vector<PointRef>& s, Ball& out) {
  const std::size_t d = s.front().size();
  const std::size_t m = s.size();
  if (m == 1) {
    out.center.assign(s[0].begin(), s[0].end());
    out.radius = 0.0;
    return true;
  }
  if (m == 2) {
    out.center.resize(d);
    for (std::size_t i = 0; i < d; ++i) out.center[i] = 0.5 * (s[0][i] + s[1][i]);
    out.radius = 0.5 * distance(s[0], s[1]);
    return true;
  }
  const std::size_t q = m - 1;
  std::vector<Coords> v(q, Coords(d));
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t i = 0; i < d; ++i) v[j][i] = s[j + 1][i] - s[0][i];
  // Solve 2 G lambda = b with partial pivoting.
  std::vector<Coords> a(q, Coords(q + 1));
  double scale = 0.0;
  for (std::size_t r = 0; r < q; ++r) {
    for (std::size_t c = 0; c < q; ++c) {
      double g = 0.0;
      for (std::size_t i = 0; i < d; ++i) g += v[r][i] * v[c][i];
      a[r][c] = 2.0 * g;
    }
    double b = 0.0;
    for (std::size_t i = 0; i < d; ++i) b += v[r][i] * v[r][i];
    a[r][q] = b;
    scale = std::max(scale, a[r][r]);
  }
  for (std::size_t col = 0; col < q; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < q; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-12 * scale) return false;
    std::swap(a[piv], a[col]);
    for (std::size_t r = 0; r < q; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= q; ++c) a[r][c] -= f * a[col][c];
    }
  }
  out.center.assign(s[0].begin(), s[0].end());
  for (std::size_t j = 0; j < q; ++j) {
    double lambda = a[j][q] / a[j][j];
    for (std::size_t i = 0; i < d; ++i) out.center[i] += lambda * v[j][i];
  }
  out.radius = support_radius(out.center, s);
  return true;
}

// Smallest ball through a subset of the support that contains all of it; used
// only when the support is numerically degenerate.
Ball degenerate_support_ball(const std::vector<PointRef>& s) {
  Ball best;
  best.radius = -1.0;
  const std::size_t m = s.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<PointRef> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(s[i]);
    if (sub.size() == m) continue;
    Ball b;
    if (!circumball(sub, b)) continue;
    b.radius = support_radius(b.center, s);
    if (best.radius < 0 || b.radius < best.radius) best = b;
  }
  return best;
}

Ball support_ball(const std::vector<PointRef>& s, std::size_t d) {
  if (s.empty()) {
    Ball b;
    b.center.assign(d, 0.0);
    b.radius = -1.0;
    return b;
  }
  Ball b;
  if (circumball(s, b)) return b;
  return degenerate_support_ball(s);
}

Ball mtf(std::vector<PointRef>& pts, std::size_t end, std::vector<PointRef>& support, std::size_t d) {
  Ball ball = support_ball(support, d);
  if (support.size() == d + 1) return ball;
  for (std::size_t i = 0; i < end; ++i) {
    if (inside(ball, pts[i])) continue;
    support.push_back(pts[i]);
    ball = mtf(pts, i, support, d);
    support.pop_back();
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i),
                pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return ball;
}

std::uint64_t hash_points(std::span<const PointRef> pts) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto p : pts)
    for (double c : p) {
      h ^= std::bit_cast<std::uint64_t>(c);
      h *= 1099511628211ull;
    }
  return h;
}

}  // namespace

Ball min_enclosing_ball(std::span<const std::span<const double>> points) {
  if (points.empty()) throw ValidationError("empty simplex");
  const std::size_t d = points.front().size();
  for (auto p : points)
    if (p.size() != d) throw ValidationError("mixed dimensions in point list");
  std::vector<PointRef> pts(points.begin(), points.end());
  std::mt19937_64 rng(hash_points(pts));
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<PointRef> support;
  support.reserve(d + 1);
  Ball b = mtf(pts, pts.size(), support, d);
  b.radius = std::max(b.radius, 0.0);
  return b;
}

Ball min_enclosing_ball(const std::vector<Coords>& points) {
  std::vector<std::span<const double>> refs(points.begin(), points.end());
  return min_enclosing_ball(refs);
}

Ball min_enclosing_ball(const PointCloud& cloud, std::span<const std::size_t> ids) {
  std::vector<std::span<const double>> refs;
  refs.reserve(ids.size());
  for (auto i : ids) refs.push_back(cloud[i]);
  return min_enclosing_ball(refs);
}

// ---------------------------------------------------------------------------
// Common intersection of balls with unequal radii

namespace {

constexpr std::size_t kSupportScanLimit = 16;

// Exact minimum of max_i (|x - c_i| - r_i) for few balls. A minimizer is a
// convex combination of the centers of its active balls, so it is the point
// of equal excess in the affine hull of some affinely independent subset of at
// most d + 1 centers; every such candidate is evaluated.
std::optional<double> support_set_minimum(std::span<const Ball> balls, std::size_t d) {
  const std::size_t m = balls.size();
  if (m > kSupportScanLimit) return std::nullopt;
  auto excess = [&](const Coords& x) {
    double f = -std::numeric_limits<double>::infinity();
    for (const auto& b : balls) f = std::max(f, distance(x, b.center) - b.radius);
    return f;
  };
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> sub;
  auto visit = [&]() {
    const Ball& b0 = balls[sub[0]];
    const std::size_t q = sub.size() - 1;
    if (q == 0) {
      best = std::min(best, excess(b0.center));
      return;
    }
    std::vector<Coords> v(q, Coords(d));
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < d; ++i) v[j][i] = balls[sub[j + 1]].center[i] - b0.center[i];
    // 2 G lambda = c - 2 t dr, solved for both right-hand sides at once.
    std::vector<Coords> a(q, Coords(q + 2));
    double scale = 0.0;
    for (std::size_t r = 0; r < q; ++r) {
      double vv = 0.0;
      for (std::size_t c = 0; c < q; ++c) {
        double g = 0.0;
        for (std::size_t i = 0; i < d; ++i) g += v[r][i] * v[c][i];
        a[r][c] = 2.0 * g;
      }
      for (std::size_t i = 0; i < d; ++i) vv += v[r][i] * v[r][i];
      const double rj = balls[sub[r + 1]].radius;
      a[r][q] = vv - (rj * rj - b0.radius * b0.radius);
      a[r][q + 1] = -2.0 * (rj - b0.radius);
      scale = std::max(scale, a[r][r]);
    }
    for (std::size_t col = 0; col < q; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < q; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) <= 1e-12 * scale) return;
      std::swap(a[piv], a[col]);
      for (std::size_t r = 0; r < q; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (std::size_t c = col; c < q + 2; ++c) a[r][c] -= f * a[col][c];
      }
    }
    // x - c_0 = p + t w
    Coords p(d, 0.0), w(d, 0.0);
    for (std::size_t j = 0; j < q; ++j)
      for (std::size_t i = 0; i < d; ++i) {
        p[i] += a[j][q] / a[j][j] * v[j][i];
        w[i] += a[j][q + 1] / a[j][j] * v[j][i];
      }
    double pp = 0.0, pw = 0.0, ww = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      pp += p[i] * p[i];
      pw += p[i] * w[i];
      ww += w[i] * w[i];
    }
    const double r0 = b0.radius;
    const double qa = ww - 1.0, qb = 2.0 * (pw - r0), qc = pp - r0 * r0;
    std::vector<double> roots;
    if (std::abs(qa) < 1e-12) {
      if (qb != 0.0) roots.push_back(-qc / qb);
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc < 0.0) return;
      const double sq = std::sqrt(disc);
      roots.push_back((-qb - sq) / (2.0 * qa));
      roots.push_back((-qb + sq) / (2.0 * qa));
    }
    for (double t : roots) {
      Coords x(d);
      for (std::size_t i = 0; i < d; ++i) x[i] = b0.center[i] + p[i] + t * w[i];
      best = std::min(best, excess(x));
    }
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    for (std::size_t i = start; i < m; ++i) {
      sub.push_back(i);
      visit();
      if (sub.size() < d + 1) self(self, i + 1);
      sub.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace

bool balls_intersect(std::span<const Ball> balls, double tol) {
  if (balls.empty()) throw ValidationError("balls_intersect: empty ball list");
  if (!(tol > 0)) throw ValidationError("balls_intersect: tol must be positive");
  const std::size_t d = balls.front().center.size();
  for (const auto& b : balls) {
    if (b.center.size() != d) throw ValidationError("balls_intersect: mixed dimensions");
    if (b.radius < 0) throw ValidationError("balls_intersect: negative radius");
  }
  const std::size_t m = balls.size();
  const std::size_t n = std::max<std::size_t>(d, 2);

  auto center = [&](std::size_t i, std::size_t k) { return k < d ? balls[i].center[k] : 0.0; };
  // f(x) and a subgradient.
  auto evaluate = [&](const Coords& x, Coords& g) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    double arg_norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double t = x[k] - center(i, k);
        s += t * t;
      }
      double norm = std::sqrt(s);
      double v = norm - balls[i].radius;
      if (v > best) {
        best = v;
        arg = i;
        arg_norm = norm;
      }
    }
    g.assign(n, 0.0);
    if (arg_norm > 0)
      for (std::size_t k = 0; k < n; ++k) g[k] = (x[k] - center(arg, k)) / arg_norm;
    return best;
  };

  // Certified lower bound from pairs: for any x, max of two terms is at least
  // half their sum, which is at least (|c_i - c_j| - r_i - r_j) / 2.
  double lower = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      double dij = distance(balls[i].center, balls[j].center);
      lower = std::max(lower, 0.5 * (dij - balls[i].radius - balls[j].radius));
    }
  if (lower > tol) return false;

  Coords x(n, 0.0), g;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) x[k] += center(i, k) / static_cast<double>(m);
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    Coords c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = center(i, k);
    upper = std::min(upper, evaluate(c, g));
  }
  if (upper <= tol) return true;

  // A minimizer lies in the convex hull of the centers, hence in this ball.
  double r0 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += (center(i, k) - x[k]) * (center(i, k) - x[k]);
    r0 = std::max(r0, std::sqrt(s));
  }
  r0 = r0 * (1.0 + 1e-9) + 1e-300;
  std::vector<double> P(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) P[k * n + k] = r0 * r0;

  const double nn = static_cast<double>(n);
  const double shrink = nn * nn / (nn * nn - 1.0);
  Coords Pg(n);
  for (int iter = 0; iter < 100000; ++iter) {
    double f = evaluate(x, g);
    upper = std::min(upper, f);
    if (upper <= tol) return true;
    double gnorm = 0.0;
    for (double t : g) gnorm += t * t;
    if (gnorm == 0.0) return f <= tol;  // x is a global minimizer
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += P[r * n + c] * g[c];
      Pg[r] = s;
    }
    double gPg = 0.0;
    for (std::size_t k = 0; k < n; ++k) gPg += g[k] * Pg[k];
    if (!(gPg > 0) || !std::isfinite(gPg)) break;
    double width = std::sqrt(gPg);
    lower = std::max(lower, f - width);
    if (lower > tol) break;
    if (width <= 1e-15 * (1.0 + std::abs(f))) break;
    for (std::size_t k = 0; k < n; ++k) x[k] -= Pg[k] / ((nn + 1.0) * width);
    const double coef = 2.0 / ((nn + 1.0) * gPg);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) P[r * n + c] = shrink * (P[r * n + c] - coef * Pg[r] * Pg[c]);
  }
  // The cutting planes stall on thin curved sublevel sets, e.g. tangent balls,
  // and rounding can then drop the minimizer from the ellipsoid, so lower
  // bounds from the loop are confirmed by the exact scan when it applies.
  if (auto exact = support_set_minimum(balls, d)) return *exact <= tol;
  if (lower > tol) return false;
  throw IndeterminateError("indeterminate intersection");
}

}  // namespace cechpix
