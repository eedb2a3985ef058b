#include <climits>
#include <cmath>
#include <memory>
#include <set>

#include "cechpix/errors.hpp"
#include "cechpix/pixel_set.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cechpix;

namespace {

struct LazyFixture {
  ScaleLadder ladder;
  std::shared_ptr<PointCloud> cloud;
  std::shared_ptr<PixelGrid> grid;
  ActiveSchedule schedule;

  LazyFixture(std::vector<Coords> pts, double eps)
      : ladder(eps),
        cloud(std::make_shared<PointCloud>(pts)),
        grid(std::make_shared<PixelGrid>(ladder, cloud)),
        schedule(build_wspd(*cloud, eps / 8, ladder)) {}
};

double dist_to_cloud(const PointCloud& p, std::span<const double> x) {
  double best = oracle::kInf;
  for (std::size_t i = 0; i < p.size(); ++i) best = std::min(best, distance(p[i], x));
  return best;
}

// Linear scan: whether x lies in some member cube.
bool covered_by_scan(const PixelSet& s, std::span<const double> x) {
  for (const auto& [px, v] : s.members())
    if (s.grid().contains_point(px, x)) return true;
  return false;
}

// Pairwise strict-containment scan.
// Lattice cubes nest dyadically, so a cube can only lie inside one of its
// ancestors; a point pixel lies inside any member cube holding its point.
bool maximal_by_ancestors(const PixelSet& s) {
  int top = INT_MIN;
  for (const auto& [a, v] : s.members())
    if (!a.degenerate()) top = std::max(top, a.level);
  for (const auto& [a, v] : s.members()) {
    if (a.degenerate()) {
      const auto x = (*s.grid().points())[static_cast<std::size_t>(a.point)];
      for (const auto& [b, w] : s.members())
        if (!b.degenerate() && s.grid().contains_point(b, x)) return false;
      continue;
    }
    for (int l = a.level + 1; l <= top; ++l)
      if (s.contains(s.grid().parent(a, l))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("pixel_sets") {
  TEST_CASE("simple set of no points is empty") {
    auto grid = std::make_shared<PixelGrid>(ScaleLadder(0.2), 2);
    PointCloud none(2, {});
    CHECK(simple_pixel_set(none, 3, grid).size() == 0);
  }

  TEST_CASE("simple set of one point is its flood") {
    ScaleLadder l(0.2);
    auto cloud = std::make_shared<PointCloud>(std::vector<Coords>{{0.31, -0.27}});
    auto grid = std::make_shared<PixelGrid>(l, cloud);
    for (int k : {-5, 0, 4}) {
      const double a = l.scale(k);
      auto flood = grid->flood_ball((*cloud)[0], a, level_for_scale(a), a);
      PixelSet s = simple_pixel_set(*cloud, k, grid);
      CHECK(s.size() == flood.size());
      CHECK(s.sorted() == flood);
      CHECK(s.level_counts().size() == 1);
    }
  }

  TEST_CASE("simple set of two far points is a disjoint union") {
    ScaleLadder l(0.2);
    auto cloud = std::make_shared<PointCloud>(std::vector<Coords>{{0.0, 0.0}, {50.0, 3.0}});
    auto grid = std::make_shared<PixelGrid>(l, cloud);
    const int k = 2;
    const double a = l.scale(k);
    auto f0 = grid->flood_ball((*cloud)[0], a, level_for_scale(a), a);
    auto f1 = grid->flood_ball((*cloud)[1], a, level_for_scale(a), a);
    std::set<PixelId> both(f0.begin(), f0.end());
    both.insert(f1.begin(), f1.end());
    CHECK(both.size() == f0.size() + f1.size());
    PixelSet s = simple_pixel_set(*cloud, k, grid);
    CHECK(s.sorted() == std::vector<PixelId>(both.begin(), both.end()));
  }

  TEST_CASE("lazy initialization") {
    LazyFixture f({{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}}, 0.125);
    PixelSet s = lazy_initialize(f.grid, f.schedule);
    CHECK(s.size() == 3);
    CHECK(s.point_pixel_count() == 3);
    for (std::int32_t i = 0; i < 3; ++i) {
      CHECK(s.contains(PixelId::point_pixel(i)));
      CHECK(s.vertex(PixelId::point_pixel(i)) == static_cast<VertexId>(i));
    }
    int lo = f.schedule.pairs().front().snapped.lo;
    for (const auto& p : f.schedule.pairs()) lo = std::min(lo, p.snapped.lo);
    CHECK(s.scale_exponent() == lo - 1);

    LazyFixture one({{4.0, 4.0}}, 0.125);
    PixelSet s1 = lazy_initialize(one.grid, one.schedule);
    CHECK(s1.size() == 1);
    CHECK(s1.scale_exponent() == 0);
    CHECK(one.ladder.scale(s1.scale_exponent()) == 1.0);
  }

  TEST_CASE("lazy advance with nobody active changes nothing") {
    LazyFixture f({{0.0}, {1.0}, {10000.0}}, 0.25);
    PixelSet s = lazy_initialize(f.grid, f.schedule);
    auto exps = f.schedule.critical_exponents();
    int gap = 0;
    for (std::size_t i = 1; i < exps.size(); ++i)
      if (exps[i] > exps[i - 1] + 1) gap = exps[i - 1] + 1;
    REQUIRE(gap != 0);
    for (int k : exps) {
      if (k > gap) break;
      lazy_advance_in_place(s, k, f.schedule);
    }
    auto before = s.sorted();
    AdvanceDelta d = lazy_advance_in_place(s, gap, f.schedule);
    CHECK(d.added.empty());
    CHECK(d.contracted.empty());
    CHECK(d.flood_sizes.empty());
    CHECK(s.sorted() == before);
  }

  TEST_CASE("first activation contracts the point pixels") {
    LazyFixture f({{0.013, 0.021}, {1.0, 0.3}}, 0.125);
    PixelSet s = lazy_initialize(f.grid, f.schedule);
    const int k = f.schedule.critical_exponents().front();
    const double a = f.ladder.scale(k);
    const int level = level_for_scale(a);
    AdvanceDelta d = lazy_advance_in_place(s, k, f.schedule);
    REQUIRE(d.contracted.size() == 2);
    for (const auto& [old_px, coverer] : d.contracted) {
      REQUIRE(old_px.degenerate());
      auto p = (*f.cloud)[static_cast<std::size_t>(old_px.point)];
      CHECK(f.grid->contains_point(coverer, p));
      const double off = distance(f.grid->center(f.grid->pixel_containing(p, level)), p);
      CHECK(off <= f.ladder.epsilon() * a / 8.0 * (1 + 1e-12));
    }
    CHECK(s.point_pixel_count() == 0);
    // Brute-force union of both floods at the lazy select radius.
    std::set<PixelId> all;
    const double select = (1 + f.ladder.epsilon() / 2) * a;
    for (std::size_t i = 0; i < 2; ++i) {
      auto fl = f.grid->flood_ball((*f.cloud)[i], a, level, select);
      all.insert(fl.begin(), fl.end());
    }
    CHECK(s.sorted() == std::vector<PixelId>(all.begin(), all.end()));
  }

  TEST_CASE("covering pixel") {
    auto grid = std::make_shared<PixelGrid>(ScaleLadder(0.2), 2);
    PixelSet s(grid, 0);
    PixelId big = PixelId::cube(1, std::vector<std::int64_t>{0, 0});
    s.insert(big, 0);
    CHECK_FALSE(covering_pixel(s, big).has_value());
    PixelId child = PixelId::cube(0, std::vector<std::int64_t>{1, 1});
    REQUIRE(covering_pixel(s, child).has_value());
    CHECK(*covering_pixel(s, child) == big);
    CHECK_FALSE(covering_pixel(s, PixelId::cube(0, std::vector<std::int64_t>{2, 1})).has_value());

    gen::Rng rng(41);
    for (int t = 0; t < 30; ++t) {
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      auto g = std::make_shared<PixelGrid>(ScaleLadder(0.2), d);
      PixelSet set(g, 0);
      std::vector<PixelId> members;
      for (int i = 0; i < 60; ++i) {
        PixelId p = rng.pixel(d, -2, 2, 5);
        bool clash = false;
        for (const auto& m : members) clash = clash || g->contains(m, p) || g->contains(p, m);
        if (clash) continue;
        members.push_back(p);
        set.insert(p, static_cast<VertexId>(members.size()));
      }
      CHECK(is_inclusion_maximal(set));
      for (int q = 0; q < 200; ++q) {
        PixelId a = rng.pixel(d, -3, 2, 10);
        std::optional<PixelId> expect;
        for (const auto& m : members)
          if (!(m == a) && g->contains(m, a)) expect = m;
        CHECK(covering_pixel(set, a) == expect);
        std::vector<PixelId> inside;
        for (const auto& m : members)
          if (!(m == a) && g->contains(a, m)) inside.push_back(m);
        std::sort(inside.begin(), inside.end());
        CHECK(set.covered_by(a) == inside);
        std::vector<PixelId> meet;
        for (const auto& m : members)
          if (!(m == a) && g->intersect(a, m)) meet.push_back(m);
        std::sort(meet.begin(), meet.end());
        CHECK(set.intersecting(a) == meet);
        if (set.contains(a)) {
          std::vector<PixelId> larger;
          for (const auto& m : meet)
            if (m.level >= a.level) larger.push_back(m);
          auto got = set.larger_or_equal_neighbors(a);
          std::sort(got.begin(), got.end());
          CHECK(got == larger);
        }
        Coords x = rng.vec(d, -20.0 * g->side(0), 20.0 * g->side(0));
        CHECK(set.covers_point(x) == covered_by_scan(set, x));
      }
    }
  }

  TEST_CASE("simple sandwich on random inputs") {
    gen::Rng rng(42);
    std::size_t checked = 0;
    for (int t = 0; t < 6; ++t) {
      const double eps = rng.uniform(0.05, 0.2);
      ScaleLadder l(eps);
      auto cloud = std::make_shared<PointCloud>(rng.cloud(static_cast<std::size_t>(rng.integer(1, 6)), 2));
      auto grid = std::make_shared<PixelGrid>(l, cloud);
      const int k = l.floor_exponent(rng.uniform(0.05, 0.4));
      const double a = l.scale(k);
      PixelSet s = simple_pixel_set(*cloud, k, grid);
      PixelSet next = simple_pixel_set(*cloud, k + 1, grid);
      for (int i = 0; i < 1000; ++i) {
        const auto& p = (*cloud)[static_cast<std::size_t>(rng.integer(0, static_cast<int>(cloud->size()) - 1))];
        Coords dir = rng.direction(2);
        const double t_len = rng.uniform(0.0, 1.2) * a;
        Coords x{p[0] + dir[0] * t_len, p[1] + dir[1] * t_len};
        const double dx = dist_to_cloud(*cloud, x);
        if (s.covers_point(x)) CHECK(dx <= (1 + eps / 2) * a);
        if (dx <= (1 + eps / 2) * a) CHECK(next.covers_point(x));
        ++checked;
      }
    }
    CHECK(checked == 6000);
  }

  TEST_CASE("lazy sets stay maximal, cover the lazy balls and only contract old into new") {
    gen::Rng rng(43);
    int maximal_checks = 0;
    for (int t = 0; t < 4; ++t) {
      LazyFixture f(rng.points(static_cast<std::size_t>(rng.integer(2, 5)), 2), 0.25);
      PixelSet s = lazy_initialize(f.grid, f.schedule);
      int step = 0;
      for (int k : f.schedule.critical_exponents()) {
        auto before = s.sorted();
        std::set<PixelId> old(before.begin(), before.end());
        AdvanceDelta d = lazy_advance_in_place(s, k, f.schedule);
        std::set<PixelId> added(d.added.begin(), d.added.end());
        for (const auto& a : d.added) CHECK(old.count(a) == 0);
        for (const auto& [o, c] : d.contracted) {
          CHECK(old.count(o) == 1);
          CHECK(added.count(c) == 1);
          CHECK(f.grid->contains(c, o));
          CHECK_FALSE(s.contains(o));
        }
        CHECK(maximal_by_ancestors(s));
        ++maximal_checks;
        // The pairwise check is quadratic.
        if (step++ % 4 == 0 && s.size() < 4000) CHECK(is_inclusion_maximal(s));
        for (std::size_t p = 0; p < f.cloud->size(); ++p) {
          const double r = radius_function(f.schedule, static_cast<PointIndex>(p), k);
          for (int i = 0; i < 20; ++i) {
            Coords dir = rng.direction(2);
            const double len = r * std::sqrt(rng.uniform(0.0, 1.0));
            Coords x{(*f.cloud)[p][0] + dir[0] * len, (*f.cloud)[p][1] + dir[1] * len};
            CHECK(s.covers_point(x));
          }
        }
      }
    }
    CHECK(maximal_checks >= 10);
  }

  TEST_CASE("lazy_advance copies") {
    LazyFixture f({{0.0, 0.0}, {1.0, 0.0}}, 0.25);
    PixelSet s = lazy_initialize(f.grid, f.schedule);
    const int k = f.schedule.critical_exponents().front();
    auto [next, d] = lazy_advance(s, k, f.schedule);
    CHECK(s.size() == 2);
    CHECK(next.size() == s.size() + d.added.size() - d.contracted.size());
  }
}
