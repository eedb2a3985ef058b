#include "cechpix/wspd.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>

#include "cechpix/errors.hpp"

namespace cechpix {

namespace {

std::vector<ExponentRange> merge_ranges(std::vector<ExponentRange> r) {
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
  std::vector<ExponentRange> out;
  for (const auto& x : r) {
    if (!out.empty() && x.lo <= out.back().hi + 1)
      out.back().hi = std::max(out.back().hi, x.hi);
    else
      out.push_back(x);
  }
  return out;
}

// Compressed quadtree over a permutation of the points.
class SplitTree {
 public:
  struct Node {
    std::uint32_t begin = 0, end = 0;
    Coords lo, hi;
    double diag = 0.0;
    std::vector<std::uint32_t> children;
  };

  explicit SplitTree(const PointCloud& pts) : pts_(pts), perm_(pts.size()) {
    std::iota(perm_.begin(), perm_.end(), 0u);
    const std::size_t d = pts.dim();
    Coords lo(d), hi(d);
    bbox(0, static_cast<std::uint32_t>(pts.size()), lo, hi);
    Coords center(d);
    double half = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      center[k] = 0.5 * (lo[k] + hi[k]);
      half = std::max(half, 0.5 * (hi[k] - lo[k]));
    }
    build(0, static_cast<std::uint32_t>(pts.size()), center, half > 0 ? half : 1.0);
  }

  const Node& node(std::uint32_t i) const { return nodes_[i]; }
  std::span<const std::uint32_t> members(std::uint32_t i) const {
    return {perm_.data() + nodes_[i].begin, nodes_[i].end - nodes_[i].begin};
  }

 private:
  void bbox(std::uint32_t b, std::uint32_t e, Coords& lo, Coords& hi) const {
    const std::size_t d = pts_.dim();
    lo.assign(d, std::numeric_limits<double>::infinity());
    hi.assign(d, -std::numeric_limits<double>::infinity());
    for (std::uint32_t i = b; i < e; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], pts_[perm_[i]][k]);
        hi[k] = std::max(hi[k], pts_[perm_[i]][k]);
      }
  }

  std::uint32_t build(std::uint32_t b, std::uint32_t e, Coords center, double half) {
    const std::size_t d = pts_.dim();
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Node nd;
    nd.begin = b;
    nd.end = e;
    bbox(b, e, nd.lo, nd.hi);
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += (nd.hi[k] - nd.lo[k]) * (nd.hi[k] - nd.lo[k]);
    nd.diag = std::sqrt(s);
    if (e - b > 1) {
      std::vector<std::uint64_t> code(e - b);
      for (int guard = 0;; ++guard) {
        if (guard > 2200) {
          // Cell shrinking stalled in floating point: split lexicographically.
          std::sort(perm_.begin() + b, perm_.begin() + e, [&](auto x, auto y) {
            auto px = pts_[x], py = pts_[y];
            return std::lexicographical_compare(px.begin(), px.end(), py.begin(), py.end());
          });
          for (std::uint32_t i = b; i < e; ++i) code[i - b] = (i - b) * 2 < (e - b) ? 0 : 1;
          break;
        }
        for (std::uint32_t i = b; i < e; ++i) {
          std::uint64_t c = 0;
          for (std::size_t k = 0; k < d; ++k)
            if (pts_[perm_[i]][k] >= center[k]) c |= (1ull << k);
          code[i - b] = c;
        }
        if (std::any_of(code.begin(), code.end(), [&](auto c) { return c != code.front(); })) break;
        // All points in one orthant: shrink the cell without creating a node.
        half *= 0.5;
        for (std::size_t k = 0; k < d; ++k) center[k] += (code.front() >> k & 1u) ? half : -half;
      }
      std::vector<std::uint32_t> order(e - b);
      std::iota(order.begin(), order.end(), 0u);
      std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return code[x] < code[y]; });
      std::vector<std::uint32_t> tmp(e - b);
      std::vector<std::uint64_t> sorted_code(e - b);
      for (std::size_t i = 0; i < order.size(); ++i) {
        tmp[i] = perm_[b + order[i]];
        sorted_code[i] = code[order[i]];
      }
      std::copy(tmp.begin(), tmp.end(), perm_.begin() + b);
      std::uint32_t i = 0;
      while (i < e - b) {
        std::uint32_t j = i;
        while (j < e - b && sorted_code[j] == sorted_code[i]) ++j;
        Coords c = center;
        const double h = half * 0.5;
        for (std::size_t k = 0; k < d; ++k) c[k] += (sorted_code[i] >> k & 1u) ? h : -h;
        nd.children.push_back(build(b + i, b + j, c, h));
        i = j;
      }
    }
    nodes_[id] = std::move(nd);
    return id;
  }

  const PointCloud& pts_;
  std::vector<std::uint32_t> perm_;
  std::vector<Node> nodes_;
};

double box_distance(const SplitTree::Node& a, const SplitTree::Node& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.lo.size(); ++k) {
    double gap = std::max({0.0, a.lo[k] - b.hi[k], b.lo[k] - a.hi[k]});
    s += gap * gap;
  }
  return std::sqrt(s);
}

}  // namespace

ActiveSchedule::ActiveSchedule(std::vector<WspdPair> pairs, double delta, ScaleLadder ladder, std::size_t n_points)
    : pairs_(std::move(pairs)), delta_(delta), ladder_(ladder), active_(n_points) {
  std::vector<std::vector<ExponentRange>> raw(n_points);
  for (const auto& pr : pairs_) {
    raw[pr.rep_a].push_back(pr.snapped);
    raw[pr.rep_b].push_back(pr.snapped);
  }
  for (std::size_t p = 0; p < n_points; ++p) active_[p] = merge_ranges(std::move(raw[p]));
}

bool ActiveSchedule::is_active(PointIndex p, int k) const {
  for (const auto& r : active_[p])
    if (r.contains(k)) return true;
  return false;
}

double ActiveSchedule::radius(PointIndex p, int k) const {
  bool found = false;
  int best = 0;
  for (const auto& r : active_[p]) {
    if (r.lo > k) break;
    best = std::min(k, r.hi);
    found = true;
  }
  return found ? ladder_.scale(best) : 0.0;
}

double ActiveSchedule::radius_at(PointIndex p, double alpha) const {
  if (!(alpha > 0)) return 0.0;
  return radius(p, ladder_.floor_exponent(alpha));
}

double ActiveSchedule::tilde_radius(PointIndex p, double alpha) const {
  double best = radius_at(p, alpha);
  for (const auto& pr : pairs_) {
    bool member = std::binary_search(pr.set_a.begin(), pr.set_a.end(), p) ||
                  std::binary_search(pr.set_b.begin(), pr.set_b.end(), p);
    if (!member) continue;
    const double lo = pr.distance / 4.0, hi = 4.0 * pr.distance;
    if (lo <= alpha) best = std::max(best, std::min(alpha, hi));
  }
  return best;
}

std::vector<int> ActiveSchedule::critical_exponents() const {
  std::vector<ExponentRange> all;
  all.reserve(pairs_.size());
  for (const auto& pr : pairs_) all.push_back(pr.snapped);
  std::vector<int> out;
  for (const auto& r : merge_ranges(std::move(all)))
    for (int k = r.lo; k <= r.hi; ++k) out.push_back(k);
  return out;
}

void ActiveSchedule::write_pairs(std::ostream& out) const {
  for (const auto& pr : pairs_) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, pr.distance);
    out << pr.rep_a << ' ' << pr.rep_b << ' ' << std::string_view(buf, res.ptr - buf) << ' ' << pr.snapped.lo << ' '
        << pr.snapped.hi << '\n';
  }
}

ActiveSchedule build_wspd(const PointCloud& points, double delta, const ScaleLadder& ladder) {
  if (!(delta > 0.0 && delta <= 0.1)) throw ValidationError("WSPD delta must lie in (0, 1/10], got " + std::to_string(delta));
  if (points.empty()) throw ValidationError("WSPD needs at least one point");
  std::vector<WspdPair> pairs;
  if (points.size() >= 2) {
    SplitTree tree(points);
    auto emit = [&](std::uint32_t u, std::uint32_t v) {
      WspdPair pr;
      auto mu = tree.members(u), mv = tree.members(v);
      pr.set_a.assign(mu.begin(), mu.end());
      pr.set_b.assign(mv.begin(), mv.end());
      std::sort(pr.set_a.begin(), pr.set_a.end());
      std::sort(pr.set_b.begin(), pr.set_b.end());
      if (pr.set_b.front() < pr.set_a.front()) std::swap(pr.set_a, pr.set_b);
      pr.rep_a = pr.set_a.front();
      pr.rep_b = pr.set_b.front();
      pr.distance = points.distance(pr.rep_a, pr.rep_b);
      pr.raw_lo = pr.distance / 8.0;
      pr.raw_hi = 8.0 * pr.distance;
      pr.snapped = {ladder.floor_exponent(pr.raw_lo), ladder.ceil_exponent(pr.raw_hi)};
      pairs.push_back(std::move(pr));
    };
    auto find_pairs = [&](auto&& self, std::uint32_t u, std::uint32_t v) -> void {
      const auto& a = tree.node(u);
      const auto& b = tree.node(v);
      const double gap = box_distance(a, b);
      if (a.diag <= delta * gap && b.diag <= delta * gap) {
        emit(u, v);
        return;
      }
      if (a.diag >= b.diag && !a.children.empty()) {
        for (auto c : a.children) self(self, c, v);
      } else {
        CECHPIX_ASSERT(!b.children.empty(), "WSPD: cannot split a singleton pair");
        for (auto c : b.children) self(self, u, c);
      }
    };
    auto walk = [&](auto&& self, std::uint32_t u) -> void {
      const auto& ch = tree.node(u).children;
      for (auto c : ch) self(self, c);
      for (std::size_t i = 0; i < ch.size(); ++i)
        for (std::size_t j = i + 1; j < ch.size(); ++j) find_pairs(find_pairs, ch[i], ch[j]);
    };
    walk(walk, 0);
    std::sort(pairs.begin(), pairs.end(), [](const WspdPair& x, const WspdPair& y) {
      return std::tie(x.rep_a, x.rep_b, x.set_a, x.set_b) < std::tie(y.rep_a, y.rep_b, y.set_a, y.set_b);
    });
  }
  return ActiveSchedule(std::move(pairs), delta, ladder, points.size());
}

bool validate_wspd(const ActiveSchedule& schedule, const PointCloud& points, std::optional<double> delta) {
  const double dl = delta.value_or(schedule.delta());
  const std::size_t n = points.size();
  std::vector<char> covered(n * n, 0);
  for (const auto& pr : schedule.pairs()) {
    auto diam = [&](const std::vector<PointIndex>& s) {
      double best = 0.0;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, points.distance(s[i], s[j]));
      return best;
    };
    double mind = std::numeric_limits<double>::infinity();
    for (auto a : pr.set_a)
      for (auto b : pr.set_b) {
        mind = std::min(mind, points.distance(a, b));
        if (a == b) return false;
        covered[a * n + b] = covered[b * n + a] = 1;
      }
    if (diam(pr.set_a) > dl * mind || diam(pr.set_b) > dl * mind) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!covered[i * n + j]) return false;
  return true;
}

double radius_function(const ActiveSchedule& schedule, PointIndex p, int k) { return schedule.radius(p, k); }

double tilde_radius_function(const ActiveSchedule& schedule, PointIndex p, double alpha) {
  return schedule.tilde_radius(p, alpha);
}

std::vector<double> critical_scales(const ActiveSchedule& schedule) {
  std::vector<double> out;
  for (int k : schedule.critical_exponents()) out.push_back(schedule.ladder().scale(k));
  return out;
}

}  // namespace cechpix
