#include "cechpix/pixel_set.hpp"

#include <algorithm>
#include <cmath>

#include "cechpix/errors.hpp"

namespace cechpix {

PixelSet::PixelSet(std::shared_ptr<const PixelGrid> grid, int scale_exponent)
    : grid_(std::move(grid)), scale_(scale_exponent) {}

VertexId PixelSet::vertex(const PixelId& a) const {
  auto it = members_.find(a);
  return it == members_.end() ? kNoVertex : it->second;
}

void PixelSet::set_vertex(const PixelId& a, VertexId v) {
  auto it = members_.find(a);
  CECHPIX_ASSERT(it != members_.end(), "set_vertex on a non-member pixel");
  it->second = v;
}

std::vector<PixelId> PixelSet::sorted() const {
  std::vector<PixelId> out;
  out.reserve(members_.size());
  for (const auto& [p, v] : members_) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

void PixelSet::add_chain(const PixelId& a, int from_level, int to_level, int delta) {
  for (int l = from_level; l <= to_level; ++l) {
    PixelId anc = grid_->parent(a, l);
    auto& c = below_[anc];
    c += static_cast<std::uint32_t>(delta);
    if (c == 0) below_.erase(anc);
  }
}

void PixelSet::raise_top(int level) {
  if (top_ == INT_MIN) {
    top_ = level;
    return;
  }
  if (level <= top_) return;
  for (const auto& [p, v] : members_)
    if (!p.degenerate()) add_chain(p, std::max(p.level + 1, top_ + 1), level, +1);
  top_ = level;
}

bool PixelSet::insert(const PixelId& a, VertexId v) {
  if (!members_.emplace(a, v).second) return false;
  if (a.degenerate()) {
    points_.insert(std::lower_bound(points_.begin(), points_.end(), a.point), a.point);
    ++point_count_;
    return true;
  }
  raise_top(a.level);
  add_chain(a, a.level + 1, top_, +1);
  ++levels_[a.level];
  return true;
}

void PixelSet::erase(const PixelId& a) {
  if (members_.erase(a) == 0) return;
  if (a.degenerate()) {
    points_.erase(std::lower_bound(points_.begin(), points_.end(), a.point));
    --point_count_;
    return;
  }
  add_chain(a, a.level + 1, top_, -1);
  if (--levels_[a.level] == 0) levels_.erase(a.level);
}

template <typename F>
void PixelSet::for_each_cell_near(const PixelId& a, F&& f) const {
  const std::size_t d = grid_->dim();
  std::size_t n = 1;
  for (std::size_t k = 0; k < d; ++k) n *= 3;
  for (std::size_t o = 0; o < n; ++o) {
    PixelId nb = a;
    std::size_t code = o;
    for (std::size_t k = 0; k < d; ++k) {
      nb.corner[k] += static_cast<std::int64_t>(code % 3) - 1;
      code /= 3;
    }
    f(nb);
  }
}

// Visits members strictly below `cell`, descending only into children accepted by f.
// f(child, is_member) returns whether to descend into child.
template <typename F>
void PixelSet::descend(const PixelId& cell, F&& f) const {
  if (!below_.contains(cell)) return;
  const std::size_t d = grid_->dim();
  std::vector<PixelId> stack{cell};
  while (!stack.empty()) {
    PixelId cur = stack.back();
    stack.pop_back();
    for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
      PixelId ch = cur;
      ch.level = cur.level - 1;
      for (std::size_t k = 0; k < d; ++k) ch.corner[k] = 2 * cur.corner[k] + ((bits >> k) & 1u);
      const bool member = members_.contains(ch);
      const bool occupied = below_.contains(ch);
      if (!member && !occupied) continue;
      if (f(ch, member) && occupied) stack.push_back(ch);
    }
  }
}

namespace {

// Cells at `level` whose closed cube contains x, in lexicographic corner order.
std::vector<PixelId> cells_containing(const PixelGrid& g, std::span<const double> x, int level) {
  PixelId c = g.pixel_containing(x, level);
  const double s = g.side(level);
  std::vector<PixelId> out{c};
  for (std::size_t k = 0; k < g.dim(); ++k) {
    std::vector<PixelId> next;
    for (const auto& p : out) {
      if (static_cast<double>(p.corner[k]) * s == x[k]) {
        PixelId q = p;
        --q.corner[k];
        next.push_back(q);
      }
      next.push_back(p);
      if (static_cast<double>(p.corner[k] + 1) * s == x[k]) {
        PixelId q = p;
        ++q.corner[k];
        next.push_back(q);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void sort_unique(std::vector<PixelId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::optional<PixelId> PixelSet::covering(const PixelId& a) const {
  if (a.degenerate()) {
    const PointCloud* pts = grid_->points();
    CECHPIX_ASSERT(pts != nullptr, "point pixel query without points");
    auto x = (*pts)[static_cast<std::size_t>(a.point)];
    for (const auto& [l, cnt] : levels_)
      for (const auto& c : cells_containing(*grid_, x, l))
        if (members_.contains(c)) return c;
    return std::nullopt;
  }
  for (auto it = levels_.upper_bound(a.level); it != levels_.end(); ++it) {
    PixelId p = grid_->parent(a, it->first);
    if (members_.contains(p)) return p;
  }
  return std::nullopt;
}

std::vector<PixelId> PixelSet::covered_by(const PixelId& a) const {
  std::vector<PixelId> out;
  if (a.degenerate()) return out;
  descend(a, [&](const PixelId& ch, bool member) {
    if (member) out.push_back(ch);
    return true;
  });
  if (!points_.empty()) {
    const PointCloud& pts = *grid_->points();
    for (auto pid : points_)
      if (grid_->contains_point(a, pts[static_cast<std::size_t>(pid)])) out.push_back(PixelId::point_pixel(pid));
  }
  sort_unique(out);
  return out;
}

std::vector<PixelId> PixelSet::larger_or_equal_neighbors(const PixelId& a) const {
  std::vector<PixelId> out;
  if (a.degenerate()) {
    auto x = (*grid_->points())[static_cast<std::size_t>(a.point)];
    for (const auto& [l, cnt] : levels_)
      for (const auto& c : cells_containing(*grid_, x, l))
        if (members_.contains(c)) out.push_back(c);
    sort_unique(out);
    return out;
  }
  for (auto it = levels_.lower_bound(a.level); it != levels_.end(); ++it) {
    PixelId anc = grid_->parent(a, it->first);
    for_each_cell_near(anc, [&](const PixelId& nb) {
      if (nb != a && members_.contains(nb) && grid_->intersect(a, nb)) out.push_back(nb);
    });
  }
  sort_unique(out);
  return out;
}

std::vector<PixelId> PixelSet::intersecting(const PixelId& a) const {
  std::vector<PixelId> out = larger_or_equal_neighbors(a);
  if (a.degenerate()) return out;
  if (!levels_.empty() && levels_.begin()->first < a.level) {
    for_each_cell_near(a, [&](const PixelId& nb) {
      descend(nb, [&](const PixelId& ch, bool member) {
        if (!grid_->intersect(ch, a)) return false;
        if (member && ch != a) out.push_back(ch);
        return true;
      });
    });
  }
  if (!points_.empty()) {
    const PointCloud& pts = *grid_->points();
    for (auto pid : points_)
      if (grid_->contains_point(a, pts[static_cast<std::size_t>(pid)])) out.push_back(PixelId::point_pixel(pid));
  }
  sort_unique(out);
  return out;
}

bool PixelSet::covers_point(std::span<const double> x) const {
  for (const auto& [l, cnt] : levels_)
    for (const auto& c : cells_containing(*grid_, x, l))
      if (members_.contains(c)) return true;
  if (!points_.empty()) {
    const PointCloud& pts = *grid_->points();
    for (auto pid : points_) {
      auto p = pts[static_cast<std::size_t>(pid)];
      if (std::equal(p.begin(), p.end(), x.begin())) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

PixelSet simple_pixel_set(const PointCloud& points, int k, std::shared_ptr<const PixelGrid> grid) {
  ScaleLadder ladder(grid->epsilon());
  const double alpha = ladder.scale(k);
  const int level = level_for_scale(alpha);
  PixelSet set(grid, k);
  for (std::size_t p = 0; p < points.size(); ++p)
    for (const auto& px : grid->flood_ball(points[p], alpha, level, alpha)) set.insert(px);
  return set;
}

int lazy_initial_exponent(const ActiveSchedule& schedule) {
  if (schedule.pairs().empty()) return 0;
  int lo = schedule.pairs().front().snapped.lo;
  for (const auto& pr : schedule.pairs()) lo = std::min(lo, pr.snapped.lo);
  return lo - 1;
}

PixelSet lazy_initialize(std::shared_ptr<const PixelGrid> grid, const ActiveSchedule& schedule) {
  CECHPIX_ASSERT(grid->points() != nullptr, "lazy pixel sets need a grid with points");
  const std::size_t n = grid->points()->size();
  if (n == 0) throw ValidationError("lazy initialization needs at least one point");
  PixelSet set(grid, lazy_initial_exponent(schedule));
  for (std::size_t p = 0; p < n; ++p)
    set.insert(PixelId::point_pixel(static_cast<std::int32_t>(p)), static_cast<VertexId>(p));
  return set;
}

AdvanceDelta lazy_advance_in_place(PixelSet& set, int k, const ActiveSchedule& schedule) {
  const PixelGrid& grid = set.grid();
  const PointCloud& pts = *grid.points();
  const double alpha = schedule.ladder().scale(k);
  const int level = level_for_scale(alpha);
  const double select = (1.0 + grid.epsilon() / 2.0) * alpha;
  AdvanceDelta delta;
  std::vector<PixelId> cands;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (!schedule.is_active(static_cast<PointIndex>(p), k)) continue;
    auto f = grid.flood_ball(pts[p], alpha, level, select);
    delta.flood_sizes.push_back(f.size());
    cands.insert(cands.end(), f.begin(), f.end());
  }
  sort_unique(cands);
  for (const auto& c : cands) {
    if (set.contains(c)) continue;
    CECHPIX_ASSERT(!set.covering(c).has_value(), "new pixel is covered by an existing pixel");
    delta.added.push_back(c);
  }
  for (const auto& c : delta.added) set.insert(c);
  for (const auto& c : delta.added)
    for (const auto& q : set.covered_by(c)) {
      delta.contracted.emplace_back(q, c);
      delta.contracted_vertices.push_back(set.vertex(q));
      set.erase(q);
    }
  set.set_scale_exponent(k);
  return delta;
}

std::pair<PixelSet, AdvanceDelta> lazy_advance(const PixelSet& prev, int k, const ActiveSchedule& schedule) {
  PixelSet next = prev;
  AdvanceDelta delta = lazy_advance_in_place(next, k, schedule);
  return {std::move(next), std::move(delta)};
}

std::optional<PixelId> covering_pixel(const PixelSet& set, const PixelId& a) { return set.covering(a); }

bool is_inclusion_maximal(const PixelSet& set) {
  auto all = set.sorted();
  for (const auto& a : all)
    for (const auto& b : all)
      if (a != b && set.grid().contains(b, a)) return false;
  return true;
}

}  // namespace cechpix
