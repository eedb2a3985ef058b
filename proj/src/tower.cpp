#include "cechpix/tower.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "cechpix/errors.hpp"

namespace cechpix {

const char* to_string(TowerMode m) { return m == TowerMode::simple ? "simple" : "lazy"; }

TowerMode parse_mode(const std::string& s) {
  if (s == "simple") return TowerMode::simple;
  if (s == "lazy") return TowerMode::lazy;
  throw ValidationError("mode must be 'simple' or 'lazy', got '" + s + "'");
}

double internal_epsilon(double epsilon_user) {
  if (!(epsilon_user > 0.0 && epsilon_user <= 1.0))
    throw ValidationError("epsilon must lie in (0, 1], got " + std::to_string(epsilon_user));
  return epsilon_user / 4.0;
}

std::vector<int> simple_exponents(const PointCloud& points, const ScaleLadder& ladder, std::optional<double> alpha_min,
                                  std::optional<double> alpha_max) {
  if (alpha_min && !(*alpha_min > 0)) throw ValidationError("--alpha-min must be positive");
  if (alpha_max && !(*alpha_max > 0)) throw ValidationError("--alpha-max must be positive");
  double lo = alpha_min ? *alpha_min : points.min_distance() / 3.0;
  double hi = alpha_max ? *alpha_max : points.diameter();
  if (points.size() < 2 && !alpha_min && !alpha_max) return {0};
  if (points.size() < 2) {
    if (!alpha_min) lo = hi;
    if (!alpha_max) hi = lo;
  }
  if (lo > hi) throw ValidationError("scale range is empty: alpha-min exceeds alpha-max");
  std::vector<int> out;
  for (int k = ladder.ceil_exponent(lo); k <= ladder.floor_exponent(hi); ++k) out.push_back(k);
  if (out.empty()) throw ValidationError("scale range contains no ladder scale");
  return out;
}

double simplex_charge_factor(int d, int k) {
  const double m = std::pow(3.0, d) - 1.0;
  double sum = 0.0, binom = 1.0;
  for (int j = 1; j <= k; ++j) {
    binom = binom * (m - j + 1) / j;
    sum += binom;
  }
  return (m + 1.0) * sum;
}

namespace {

class Builder {
 public:
  Builder(const PointCloud& points, const TowerOptions& opt, const ScaleObserver& obs)
      : points_(std::make_shared<PointCloud>(points)),
        ladder_(internal_epsilon(opt.epsilon_user)),
        grid_(std::make_shared<PixelGrid>(ladder_, points_)),
        skeleton_(opt.skeleton),
        opt_(opt),
        observer_(obs) {
    if (points.empty()) throw ValidationError("tower needs at least one point");
    if (skeleton_ < 0 || static_cast<std::size_t>(skeleton_) + 1 > kMaxSimplexSize)
      throw ValidationError("skeleton dimension out of range");
    // Lazy floods select centers out to (1 + eps/2) alpha.
    result_.stats.flood_bound =
        grid_->packing_bound(opt.mode == TowerMode::lazy ? 1.0 + ladder_.epsilon() / 2.0 : 1.0);
    result_.stats.simplex_factor = simplex_charge_factor(static_cast<int>(points.dim()), skeleton_);
  }

  TowerResult run() {
    if (opt_.mode == TowerMode::lazy)
      run_lazy();
    else
      run_simple();
    const auto& st = result_.stats;
    if (static_cast<double>(st.simplices_added) > st.simplex_factor * static_cast<double>(st.pixels_added))
      throw InvariantError("tower added " + std::to_string(st.simplices_added) + " simplices for " +
                           std::to_string(st.pixels_added) + " pixels, above the charging bound");
    return std::move(result_);
  }

 private:
  void check_flood(std::size_t count) {
    auto& st = result_.stats;
    ++st.floods;
    st.max_flood = std::max(st.max_flood, count);
    if (static_cast<double>(count) > st.flood_bound)
      throw InvariantError("flood of " + std::to_string(count) + " pixels exceeds the packing bound " +
                           std::to_string(st.flood_bound));
  }

  void run_lazy() {
    const ActiveSchedule schedule = build_wspd(*points_, ladder_.epsilon() / 8.0, ladder_);
    result_.stats.wspd_pairs = schedule.pairs().size();
    PixelSet set = lazy_initialize(grid_, schedule);
    const int k0 = set.scale_exponent();
    result_.stream.push_scale(ladder_.scale(k0));
    for (std::size_t p = 0; p < points_->size(); ++p) {
      result_.registry.push_back(PixelId::point_pixel(static_cast<std::int32_t>(p)));
      result_.stream.push_add(Simplex{static_cast<VertexId>(p)});
    }
    result_.stats.pixels_added += points_->size();
    result_.stats.scales.push_back({ladder_.scale(k0), set.size(), points_->size(), 0, 0});
    notify(k0, set);
    for (int k : schedule.critical_exponents()) {
      AdvanceDelta delta = lazy_advance_in_place(set, k, schedule);
      for (auto c : delta.flood_sizes) check_flood(c);
      emit_step(k, set, delta);
    }
  }

  void run_simple() {
    const auto exps = simple_exponents(*points_, ladder_, opt_.alpha_min, opt_.alpha_max);
    std::optional<PixelSet> prev;
    for (int k : exps) {
      const double alpha = ladder_.scale(k);
      const int level = level_for_scale(alpha);
      PixelSet next(grid_, k);
      for (std::size_t p = 0; p < points_->size(); ++p) {
        auto f = grid_->flood_ball((*points_)[p], alpha, level, alpha);
        check_flood(f.size());
        for (const auto& px : f) next.insert(px);
      }
      AdvanceDelta delta;
      if (!prev) {
        delta.added = next.sorted();
      } else if (prev->level_counts().begin()->first == level) {
        for (const auto& [q, v] : prev->members()) {
          if (!next.contains(q)) throw InvariantError("simple pixel sets are not monotone within a grid level");
          next.set_vertex(q, v);
        }
        for (const auto& px : next.sorted())
          if (!prev->contains(px)) delta.added.push_back(px);
      } else {
        for (const auto& q : prev->sorted()) {
          PixelId parent = grid_->parent(q, level);
          if (!next.contains(parent))
            throw InvariantError("parent pixel missing from the next simple pixel set");
          delta.contracted.emplace_back(q, parent);
          delta.contracted_vertices.push_back(prev->vertex(q));
        }
        delta.added = next.sorted();
      }
      emit_step(k, next, delta);
      prev = std::move(next);
    }
  }

  // Tokens for one scale: vertex adds, contractions, then new higher simplices.
  void emit_step(int k, PixelSet& set, const AdvanceDelta& delta) {
    auto& stream = result_.stream;
    const double alpha = ladder_.scale(k);
    stream.push_scale(alpha);
    const VertexId first_new = next_id();
    for (const auto& px : delta.added) {
      const auto id = static_cast<VertexId>(result_.registry.size());
      result_.registry.push_back(px);
      set.set_vertex(px, id);
      stream.push_add(Simplex{id});
    }
    absl::flat_hash_map<VertexId, std::vector<PixelId>> preimages;
    for (std::size_t i = 0; i < delta.contracted.size(); ++i) {
      const auto& [old_px, new_px] = delta.contracted[i];
      const VertexId target = set.vertex(new_px);
      CECHPIX_ASSERT(target != kNoVertex, "contraction target has no vertex");
      CECHPIX_ASSERT(grid_->intersect(old_px, new_px), "contraction between disjoint pixels");
      stream.push_contract(delta.contracted_vertices[i], target);
      preimages[target].push_back(old_px);
    }
    std::size_t added_simplices = 0;
    if (skeleton_ >= 1 && !delta.added.empty()) {
      std::vector<Simplex> fresh;
      for (const auto& px : delta.added) collect_new_simplices(set, px, first_new, preimages, fresh);
      std::sort(fresh.begin(), fresh.end(), dim_lex_less);
      for (const auto& s : fresh) stream.push_add(s);
      added_simplices = fresh.size();
    }
    auto& st = result_.stats;
    st.pixels_added += delta.added.size();
    st.simplices_added += added_simplices;
    st.scales.push_back({alpha, set.size(), delta.added.size(), delta.contracted.size(), added_simplices});
    if (opt_.max_tokens && stream.size() > opt_.max_tokens)
      throw ResourceLimitError("tower exceeded the budget of " + std::to_string(opt_.max_tokens) + " tokens at scale " +
                               format_real(alpha));
    notify(k, set);
  }

  // Cliques whose smallest new vertex is px's vertex and that are not images
  // of simplices of the previous complex.
  void collect_new_simplices(const PixelSet& set, const PixelId& px, VertexId first_new,
                             const absl::flat_hash_map<VertexId, std::vector<PixelId>>& preimages,
                             std::vector<Simplex>& out) const {
    const VertexId v = set.vertex(px);
    struct Cand {
      VertexId id;
      PixelId px;
    };
    std::vector<Cand> cand;
    for (const auto& q : set.intersecting(px)) {
      const VertexId w = set.vertex(q);
      if (w < first_new || w > v) cand.push_back({w, q});
    }
    const std::size_t m = cand.size();
    std::vector<std::uint8_t> adj(m * m, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        adj[i * m + j] = adj[j * m + i] = grid_->intersect(cand[i].px, cand[j].px) ? 1 : 0;

    std::vector<std::size_t> chosen;
    std::vector<VertexId> ids;
    std::array<std::span<const PixelId>, kMaxSimplexSize> lists;
    std::array<const PixelId*, kMaxSimplexSize> pick{};

    // Is the clique {v} + chosen the image of a simplex of the previous complex?
    // Survivors map to themselves; a new vertex has the pixels contracted into it.
    auto is_image = [&]() {
      std::size_t n = 0;
      auto push_vertex = [&](VertexId w, const PixelId& p) {
        if (w < first_new) {
          lists[n++] = {&p, 1};
          return true;
        }
        auto it = preimages.find(w);
        if (it == preimages.end()) return false;
        lists[n++] = it->second;
        return true;
      };
      if (!push_vertex(v, px)) return false;
      for (auto i : chosen)
        if (!push_vertex(cand[i].id, cand[i].px)) return false;
      auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == n) return true;
        for (const auto& c : lists[i]) {
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j) ok = grid_->intersect(*pick[j], c);
          if (!ok) continue;
          pick[i] = &c;
          if (self(self, i + 1)) return true;
        }
        return false;
      };
      return search(search, 0);
    };

    auto extend = [&](auto&& self, std::size_t start) -> void {
      for (std::size_t i = start; i < m; ++i) {
        bool ok = true;
        for (auto j : chosen)
          if (!adj[i * m + j]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        chosen.push_back(i);
        if (!is_image()) {
          ids.assign(1, v);
          for (auto j : chosen) ids.push_back(cand[j].id);
          out.push_back(Simplex::from_unsorted(ids));
        }
        if (chosen.size() < static_cast<std::size_t>(skeleton_)) self(self, i + 1);
        chosen.pop_back();
      }
    };
    extend(extend, 0);
  }

  VertexId next_id() const { return static_cast<VertexId>(result_.registry.size()); }

  void notify(int k, const PixelSet& set) {
    if (observer_) observer_(ScaleSnapshot{k, ladder_.scale(k), set, result_.stream, result_.registry});
  }

  std::shared_ptr<PointCloud> points_;
  ScaleLadder ladder_;
  std::shared_ptr<PixelGrid> grid_;
  int skeleton_;
  TowerOptions opt_;
  const ScaleObserver& observer_;
  TowerResult result_;
};

}  // namespace

TowerResult build_tower(const PointCloud& points, const TowerOptions& options, const ScaleObserver& observer) {
  Builder b(points, options, observer);
  return b.run();
}

}  // namespace cechpix
