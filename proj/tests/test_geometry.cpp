#include <cmath>
#include <string>

#include "cechpix/errors.hpp"
#include "cechpix/geometry.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cechpix;

TEST_SUITE("core_geometry") {
  TEST_CASE("meb of a single point") {
    Ball b = min_enclosing_ball(std::vector<Coords>{{0.0, 0.0}});
    CHECK(b.radius == 0.0);
    CHECK(b.center == Coords{0.0, 0.0});
  }

  TEST_CASE("meb of a diametral pair") {
    Ball b = min_enclosing_ball(std::vector<Coords>{{-1.0, 0.0}, {1.0, 0.0}});
    CHECK(b.radius == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(b.center[0]) < 1e-12);
    CHECK(std::abs(b.center[1]) < 1e-12);
  }

  TEST_CASE("meb of the unit equilateral triangle") {
    std::vector<Coords> tri{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    const double expected = oracle::meb_radius(tri);
    CHECK(expected == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(min_enclosing_ball(tri).radius == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("meb of nothing is an error") {
    try {
      min_enclosing_ball(std::vector<Coords>{});
      FAIL("expected an error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("empty simplex") != std::string::npos);
    }
  }

  TEST_CASE("meb radius matches the support-subset oracle") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
      auto pts = rng.points(n, d, -2.0, 2.0);
      Ball b = min_enclosing_ball(pts);
      CHECK(b.radius == doctest::Approx(oracle::meb_radius(pts)).epsilon(1e-9));
      for (const auto& p : pts) CHECK(oracle::dist(b.center, p) <= b.radius * (1 + 1e-9) + 1e-12);
    }
  }

  TEST_CASE("meb is deterministic and works on id subsets") {
    gen::Rng rng(12);
    auto pts = rng.points(40, 3);
    Ball a = min_enclosing_ball(pts), b = min_enclosing_ball(pts);
    CHECK(a.radius == b.radius);
    CHECK(a.center == b.center);
    PointCloud cloud(pts);
    std::vector<std::size_t> ids{0, 5, 7};
    Ball c = min_enclosing_ball(cloud, ids);
    CHECK(c.radius == doctest::Approx(oracle::meb_radius({pts[0], pts[5], pts[7]})).epsilon(1e-9));
  }

  TEST_CASE("balls with a gap do not meet") {
    std::vector<Ball> balls{{{0.0, 0.0}, 1.0}, {{3.0, 0.0}, 1.0}};
    CHECK_FALSE(balls_intersect(balls, 1e-9));
  }

  TEST_CASE("concentric balls meet") {
    std::vector<Ball> balls{{{0.0, 0.0}, 1.0}, {{0.0, 0.0}, 0.5}};
    CHECK(balls_intersect(balls, 1e-9));
  }

  TEST_CASE("tangent pair plus a third ball through the contact point") {
    std::vector<Ball> balls{{{0.0, 0.0}, 1.0}, {{2.0, 0.0}, 1.0}, {{1.0, 1.0}, 1.01}};
    CHECK(balls_intersect(balls, 1e-9));
    // Dense sampling around (1, 0) finds a point within tolerance of all three.
    double best = oracle::kInf;
    for (int i = -200; i <= 200; ++i)
      for (int j = -200; j <= 200; ++j) {
        Coords x{1.0 + i * 1e-4, j * 1e-4};
        double worst = -oracle::kInf;
        for (const auto& b : balls) worst = std::max(worst, oracle::dist(x, b.center) - b.radius);
        best = std::min(best, worst);
      }
    CHECK(best <= 1e-9);
  }

  TEST_CASE("tangent pairs are decided") {
    gen::Rng rng(15);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t d = static_cast<std::size_t>(rng.integer(2, 3));
      Coords c = rng.vec(d, -1.0, 1.0), u = rng.direction(d);
      const double r1 = rng.uniform(0.2, 1.0), r2 = rng.uniform(0.2, 1.0);
      Coords c2(d), contact(d), far(d);
      for (std::size_t i = 0; i < d; ++i) {
        c2[i] = c[i] + (r1 + r2) * u[i];
        contact[i] = c[i] + r1 * u[i];
      }
      // A third ball that reaches just past the contact point.
      Coords w = rng.direction(d);
      const double r3 = rng.uniform(0.3, 1.0);
      for (std::size_t i = 0; i < d; ++i) far[i] = contact[i] + r3 * w[i];
      std::vector<Ball> meet{{c, r1}, {c2, r2}, {far, r3 + 0.01}};
      CHECK(balls_intersect(meet, 1e-9));
      std::vector<Ball> apart{{c, r1}, {c2, r2 - 1e-6}, {far, r3 + 0.01}};
      CHECK_FALSE(balls_intersect(apart, 1e-9));
    }
  }

  TEST_CASE("equal radii agree with the meb criterion") {
    gen::Rng rng(13);
    int decided = 0;
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      const std::size_t n = static_cast<std::size_t>(rng.integer(1, 5));
      auto pts = rng.points(n, d, -1.0, 1.0);
      const double meb = oracle::meb_radius(pts);
      const double r = meb * rng.uniform(0.7, 1.3);
      if (std::abs(r - meb) < 1e-6) continue;
      std::vector<Ball> balls;
      for (const auto& p : pts) balls.push_back({p, r});
      CHECK(balls_intersect(balls, 1e-9) == (meb <= r + 1e-9));
      ++decided;
    }
    CHECK(decided > 300);
  }

  TEST_CASE("enlarging a radius never breaks an intersection") {
    gen::Rng rng(14);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      std::vector<Ball> balls;
      for (int i = rng.integer(1, 5); i > 0; --i) balls.push_back(rng.ball(d, 1.0, 0.2, 1.2));
      bool before;
      try {
        before = balls_intersect(balls, 1e-9);
      } catch (const IndeterminateError&) {
        continue;
      }
      auto grown = balls;
      grown[static_cast<std::size_t>(rng.integer(0, static_cast<int>(grown.size()) - 1))].radius += rng.uniform(0.0, 0.5);
      if (before) CHECK(balls_intersect(grown, 1e-9));
    }
  }

  TEST_CASE("point clouds reject bad input") {
    CHECK_THROWS_AS(PointCloud(std::vector<Coords>{{0.0, 0.0}, {1.0}}), ValidationError);
    CHECK_THROWS_AS(PointCloud(std::vector<Coords>{{0.0, NAN}}), ValidationError);
    CHECK_THROWS_AS(PointCloud(std::vector<Coords>{{0.0, 1.0}, {0.0, 1.0}}), ValidationError);
    PointCloud ok(std::vector<Coords>{{0.0, 0.0}, {3.0, 4.0}, {0.0, 1.0}});
    CHECK(ok.size() == 3);
    CHECK(ok.dim() == 2);
    CHECK(ok.diameter() == doctest::Approx(5.0));
    CHECK(ok.min_distance() == doctest::Approx(1.0));
  }
}
