#include <cmath>
#include <map>
#include <string>

#include "cechpix/cech.hpp"
#include "cechpix/errors.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cechpix;

namespace {

std::map<oracle::VSet, double> births(const FilteredComplex& fc) {
  std::map<oracle::VSet, double> out;
  for (std::size_t i = 0; i < fc.size(); ++i) {
    auto v = fc.vertices(i);
    out[oracle::VSet(v.begin(), v.end())] = fc.value(i);
  }
  return out;
}

}  // namespace

TEST_SUITE("cech_oracle") {
  TEST_CASE("one point") {
    auto fc = cech_filtration(PointCloud(std::vector<Coords>{{1.0, 1.0}}), 2, 10.0);
    REQUIRE(fc.size() == 1);
    CHECK(fc.value(0) == 0.0);
  }

  TEST_CASE("two points at distance 2") {
    auto fc = cech_filtration(PointCloud(std::vector<Coords>{{0.0, 0.0}, {2.0, 0.0}}), 1, 10.0);
    auto b = births(fc);
    REQUIRE(b.size() == 3);
    CHECK(b.at({0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b.at({0}) == 0.0);
    // Capped below the edge birth.
    CHECK(cech_filtration(PointCloud(std::vector<Coords>{{0.0, 0.0}, {2.0, 0.0}}), 1, 0.99).size() == 2);
  }

  TEST_CASE("equilateral and obtuse triangles") {
    std::vector<Coords> eq{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    auto b = births(cech_filtration(PointCloud(eq), 2, 10.0));
    CHECK(b.at({0, 1, 2}) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(b.at({0, 2}) == doctest::Approx(0.5).epsilon(1e-12));
    // Obtuse: the triangle is born with its longest edge.
    std::vector<Coords> ob{{0.0, 0.0}, {4.0, 0.0}, {2.0, 0.5}};
    auto c = births(cech_filtration(PointCloud(ob), 2, 10.0));
    CHECK(c.at({0, 1, 2}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c.at({0, 1}) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("more than 25 points hits the oracle limit") {
    gen::Rng rng(51);
    PointCloud p = rng.cloud(26, 2);
    try {
      cech_filtration(p, 2, 1.0);
      FAIL("expected an error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("oracle limit") != std::string::npos);
    }
  }

  TEST_CASE("faces are born no later than cofaces and edges at half the distance") {
    gen::Rng rng(52);
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.integer(2, 9));
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      PointCloud p = rng.cloud(n, d);
      auto fc = cech_filtration(p, 3, 10.0);
      fc.validate();
      for (std::size_t i = 0; i < fc.size(); ++i) {
        for (auto f : fc.boundary(i)) CHECK(fc.value(f) <= fc.value(i));
        if (fc.dim(i) == 1) {
          auto v = fc.vertices(i);
          CHECK(fc.value(i) == doctest::Approx(p.distance(v[0], v[1]) / 2.0).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("births match the support-subset oracle") {
    gen::Rng rng(53);
    for (int t = 0; t < 12; ++t) {
      const std::size_t n = static_cast<std::size_t>(rng.integer(3, 8));
      const std::size_t d = static_cast<std::size_t>(rng.integer(1, 3));
      auto pts = rng.points(n, d);
      const double cap = rng.uniform(0.2, 0.8);
      auto b = births(cech_filtration(PointCloud(pts), 3, cap));
      auto expected = oracle::cech_complex(pts, 3, cap);
      // Simplices within rounding of the cap may go either way.
      for (const auto& s : expected) {
        std::vector<Coords> sub;
        for (auto i : s) sub.push_back(pts[i]);
        const double r = oracle::meb_radius(sub);
        if (std::abs(r - cap) < 1e-9) continue;
        REQUIRE(b.count(s) == 1);
        CHECK(b.at(s) == doctest::Approx(r).epsilon(1e-9));
      }
      for (const auto& [s, v] : b) CHECK((expected.count(s) == 1 || std::abs(v - cap) < 1e-9));
    }
  }
}
