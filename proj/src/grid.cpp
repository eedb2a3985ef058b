#include "cechpix/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cechpix/errors.hpp"

namespace cechpix {

ScaleLadder::ScaleLadder(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.25))
    throw ValidationError("ladder epsilon must lie in (0, 0.25], got " + std::to_string(epsilon));
  log_base_ = std::log1p(epsilon);
}

double ScaleLadder::scale(int k) const { return std::pow(1.0 + epsilon_, k); }

int ScaleLadder::floor_exponent(double alpha) const {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw ValidationError("scale must be positive and finite");
  int k = static_cast<int>(std::floor(std::log(alpha) / log_base_));
  while (scale(k + 1) <= alpha) ++k;
  while (scale(k) > alpha) --k;
  return k;
}

int ScaleLadder::ceil_exponent(double alpha) const {
  int k = floor_exponent(alpha);
  return scale(k) == alpha ? k : k + 1;
}

int level_for_scale(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) throw ValidationError("scale must be positive and finite");
  int e = 0;
  std::frexp(alpha, &e);  // alpha = m * 2^e, m in [0.5, 1)
  return e - 1;
}

PixelId PixelId::cube(std::int32_t level, std::span<const std::int64_t> corner) {
  PixelId p;
  p.level = level;
  std::copy(corner.begin(), corner.end(), p.corner.begin());
  return p;
}

PixelId PixelId::point_pixel(std::int32_t point_id) {
  PixelId p;
  p.level = kPointLevel;
  p.point = point_id;
  return p;
}

bool cuboids_intersect(std::span<const Cuboid> boxes) {
  if (boxes.empty()) return true;
  const std::size_t d = boxes.front().lo.size();
  for (std::size_t k = 0; k < d; ++k) {
    double lo = boxes.front().lo[k], hi = boxes.front().hi[k];
    for (const auto& b : boxes) {
      lo = std::max(lo, b.lo[k]);
      hi = std::min(hi, b.hi[k]);
    }
    if (lo > hi) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PixelGrid::PixelGrid(const ScaleLadder& ladder, std::size_t dim)
    : dim_(dim), epsilon_(ladder.epsilon()) {
  if (dim_ == 0 || dim_ > kMaxPixelDim)
    throw ValidationError("pixel grids support 1 <= d <= " + std::to_string(kMaxPixelDim) + ", got d = " +
                          std::to_string(dim_));
  base_side_ = epsilon_ / (4.0 * std::sqrt(static_cast<double>(dim_)));
}

PixelGrid::PixelGrid(const ScaleLadder& ladder, std::shared_ptr<const PointCloud> points)
    : PixelGrid(ladder, points->dim()) {
  points_ = std::move(points);
}

double PixelGrid::side(int level) const { return std::ldexp(base_side_, level); }

std::span<const double> PixelGrid::point_of(const PixelId& a) const {
  if (!points_ || static_cast<std::size_t>(a.point) >= points_->size())
    throw InvariantError("degenerate pixel without a backing point");
  return (*points_)[static_cast<std::size_t>(a.point)];
}

PixelId PixelGrid::pixel_containing(std::span<const double> x, int level) const {
  const double s = side(level);
  PixelId p;
  p.level = level;
  for (std::size_t k = 0; k < dim_; ++k) {
    auto c = static_cast<std::int64_t>(std::floor(x[k] / s));
    // Guard against rounding in the division; geometry is always closed.
    while (static_cast<double>(c) * s > x[k]) --c;
    while (static_cast<double>(c + 1) * s < x[k]) ++c;
    p.corner[k] = c;
  }
  return p;
}

Coords PixelGrid::center(const PixelId& a) const {
  if (a.degenerate()) {
    auto p = point_of(a);
    return Coords(p.begin(), p.end());
  }
  const double s = side(a.level);
  Coords c(dim_);
  for (std::size_t k = 0; k < dim_; ++k) c[k] = (static_cast<double>(a.corner[k]) + 0.5) * s;
  return c;
}

Cuboid PixelGrid::cuboid(const PixelId& a) const {
  if (a.degenerate()) {
    auto p = point_of(a);
    return {Coords(p.begin(), p.end()), Coords(p.begin(), p.end())};
  }
  const double s = side(a.level);
  Cuboid b{Coords(dim_), Coords(dim_)};
  for (std::size_t k = 0; k < dim_; ++k) {
    b.lo[k] = static_cast<double>(a.corner[k]) * s;
    b.hi[k] = static_cast<double>(a.corner[k] + 1) * s;
  }
  return b;
}

namespace {

// floor(v / 2^shift) for any shift >= 0
std::int64_t floor_shift(std::int64_t v, int shift) {
  if (shift >= 63) return v < 0 ? -1 : 0;
  return v >> shift;
}

std::int64_t ceil_shift(std::int64_t v, int shift) { return -floor_shift(-v, shift); }

}  // namespace

bool PixelGrid::contains_point(const PixelId& a, std::span<const double> x) const {
  if (a.degenerate()) {
    auto p = point_of(a);
    return std::equal(p.begin(), p.end(), x.begin());
  }
  const double s = side(a.level);
  for (std::size_t k = 0; k < dim_; ++k) {
    if (static_cast<double>(a.corner[k]) * s > x[k]) return false;
    if (static_cast<double>(a.corner[k] + 1) * s < x[k]) return false;
  }
  return true;
}

bool PixelGrid::intersect(const PixelId& a, const PixelId& b) const {
  if (a.degenerate() && b.degenerate()) return a.point == b.point;
  if (a.degenerate()) return contains_point(b, point_of(a));
  if (b.degenerate()) return contains_point(a, point_of(b));
  const PixelId& fine = a.level <= b.level ? a : b;
  const PixelId& coarse = a.level <= b.level ? b : a;
  const int shift = coarse.level - fine.level;
  for (std::size_t k = 0; k < dim_; ++k) {
    // fine interval [f, f+1] vs coarse [c, c+1] * 2^shift, in fine units
    const std::int64_t f = fine.corner[k], c = coarse.corner[k];
    if (floor_shift(f + 1, shift) < c) return false;
    if (ceil_shift(f, shift) > c + 1) return false;
  }
  return true;
}

bool PixelGrid::contains(const PixelId& outer, const PixelId& inner) const {
  if (outer.degenerate()) return inner == outer;
  if (inner.degenerate()) return contains_point(outer, point_of(inner));
  if (inner.level > outer.level) return false;
  return parent(inner, outer.level) == outer;
}

PixelId PixelGrid::parent(const PixelId& a, int target_level) const {
  if (a.degenerate()) {
    return pixel_containing(point_of(a), target_level);
  }
  if (target_level < a.level) throw ValidationError("parent_pixel: target level below pixel level");
  PixelId p = a;
  p.level = target_level;
  const int shift = target_level - a.level;
  for (std::size_t k = 0; k < dim_; ++k) p.corner[k] = floor_shift(a.corner[k], shift);
  return p;
}

std::vector<PixelId> PixelGrid::flood_ball(std::span<const double> p, double r, int level,
                                           double select_radius) const {
  if (!(r > 0)) throw ValidationError("flood radius must be positive");
  if (!(select_radius >= r)) throw ValidationError("select radius must be at least the ball radius");
  const double s = side(level);
  const double select2 = select_radius * select_radius;

  // Row scan over the bounding box, pruned on the partial squared distance.
  // Corners are visited in lexicographic order, so the output comes out sorted.
  std::vector<PixelId> out;
  PixelId cur = PixelId::cube(level, std::array<std::int64_t, kMaxPixelDim>{});
  auto scan = [&](auto&& self, std::size_t k, double acc) -> void {
    if (k == dim_) {
      out.push_back(cur);
      return;
    }
    const double reach = std::sqrt(std::max(0.0, select2 - acc));
    const auto lo = static_cast<std::int64_t>(std::floor((p[k] - reach) / s - 0.5)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((p[k] + reach) / s - 0.5)) + 1;
    for (std::int64_t c = lo; c <= hi; ++c) {
      const double t = (static_cast<double>(c) + 0.5) * s - p[k];
      const double next = acc + t * t;
      if (next > select2) continue;
      cur.corner[k] = c;
      self(self, k + 1, next);
    }
  };
  scan(scan, 0, 0.0);
  return out;
}

double PixelGrid::packing_bound(double select_ratio) const {
  return std::pow(16.0 * std::sqrt(static_cast<double>(dim_)) * select_ratio / epsilon_, static_cast<double>(dim_));
}

}  // namespace cechpix
