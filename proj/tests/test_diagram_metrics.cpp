#include <cmath>

#include "cechpix/cech.hpp"
#include "cechpix/diagram_metrics.hpp"
#include "cechpix/errors.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace cechpix;

namespace {

PersistenceDiagram scaled(const PersistenceDiagram& d, double c) {
  PersistenceDiagram out = d;
  for (auto& p : out.points) {
    p.birth *= c;
    if (!p.essential()) p.death *= c;
  }
  return out;
}

PersistenceDiagram triangle() {
  std::vector<Coords> tri{{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
  return persistence_diagram(cech_filtration(PointCloud(tri), 2, 10.0), 1);
}

std::vector<std::pair<double, double>> log_finite(const PersistenceDiagram& d, int q) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : d.in_dim(q))
    if (!p.essential()) out.push_back({std::log(p.birth), std::log(p.death)});
  return out;
}

}  // namespace

TEST_SUITE("diagram_metrics") {
  TEST_CASE("identical diagrams are at distance zero") {
    PersistenceDiagram d{{{0, 0.0, 1.0}, {0, 0.0, kInfinity}, {1, 1.0, 3.0}}};
    for (int q : {0, 1, 2}) CHECK(log_bottleneck(d, d, q) == 0.0);
  }

  TEST_CASE("shifted death in degree zero") {
    PersistenceDiagram a{{{0, 0.0, 1.0}}}, b{{{0, 0.0, 1.1}}};
    CHECK(log_bottleneck(a, b, 0) == doctest::Approx(std::log(1.1)).epsilon(1e-12));
  }

  TEST_CASE("a lone loop goes to the diagonal") {
    PersistenceDiagram a{{{1, 1.0, 4.0}}}, empty;
    auto r = log_bottleneck_detail(a, empty, 1);
    CHECK(r.value == doctest::Approx(std::log(4.0) / 2.0).epsilon(1e-12));
    CHECK(r.to_diagonal == 1);
    CHECK(r.matched == 0);
  }

  TEST_CASE("essential counts must agree") {
    PersistenceDiagram a{{{1, 1.0, kInfinity}}}, b{{{1, 1.0, 2.0}}};
    CHECK(std::isinf(log_bottleneck(a, b, 1)));
    PersistenceDiagram c{{{0, 0.0, kInfinity}, {0, 0.0, kInfinity}}}, e{{{0, 0.0, kInfinity}, {0, 0.0, 3.0}}};
    CHECK(std::isinf(log_bottleneck(c, e, 0)));
    PersistenceDiagram f{{{1, 2.0, kInfinity}}};
    CHECK(log_bottleneck(a, f, 1) == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("nonpositive values are rejected") {
    PersistenceDiagram a{{{1, 0.0, 1.0}}}, b;
    CHECK_THROWS_AS(log_bottleneck(a, b, 1), ValidationError);
  }

  TEST_CASE("interleaving check on the triangle") {
    const PersistenceDiagram t = triangle();
    CHECK(check_interleaving(t, t, 1.0, 1).pass());
    // Scaling every value by 2 = 1 + eps sits on the bound.
    CHECK(check_interleaving(scaled(t, 2.0), t, 1.0, 1).pass());
    // One percent of eps beyond it fails in degree zero.
    auto rep = check_interleaving(scaled(t, 2.0 * 1.01), t, 1.0, 1);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.per_dim[0].pass);
    CHECK(rep.per_dim[0].bottleneck == doctest::Approx(std::log(2.02)));
    CHECK_THROWS_AS(check_interleaving(t, t, 1.0, 0), ValidationError);
  }

  TEST_CASE("metric properties") {
    gen::Rng rng(71);
    for (int t = 0; t < 100; ++t) {
      const int q = rng.integer(0, 1);
      auto a = rng.diagram(q, rng.integer(0, 4), 1);
      auto b = rng.diagram(q, rng.integer(0, 4), 1);
      auto c = rng.diagram(q, rng.integer(0, 4), 1);
      if (q == 0) {
        // Degree-zero diagrams need equal class counts to be comparable.
        b = rng.diagram(0, static_cast<int>(a.points.size()) - 1, 1);
        c = rng.diagram(0, static_cast<int>(a.points.size()) - 1, 1);
      }
      const double ab = log_bottleneck(a, b, q), ba = log_bottleneck(b, a, q);
      CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
      CHECK(log_bottleneck(a, a, q) == 0.0);
      CHECK(log_bottleneck(a, c, q) <= ab + log_bottleneck(b, c, q) + 1e-12);
      const double s = std::exp(rng.uniform(-5.0, 5.0));
      CHECK(log_bottleneck(scaled(a, s), scaled(b, s), q) == doctest::Approx(ab).epsilon(1e-9));
    }
  }

  TEST_CASE("planar distance matches brute-force matching") {
    gen::Rng rng(72);
    for (int t = 0; t < 150; ++t) {
      auto a = rng.diagram(1, rng.integer(0, 4), 0);
      auto b = rng.diagram(1, rng.integer(0, 3), 0);
      CHECK(log_bottleneck(a, b, 1) ==
            doctest::Approx(oracle::bottleneck_brute(log_finite(a, 1), log_finite(b, 1))).epsilon(1e-12));
    }
  }

  TEST_CASE("degree-zero distance matches brute-force matching of deaths") {
    gen::Rng rng(73);
    for (int t = 0; t < 150; ++t) {
      const int m = rng.integer(0, 6);
      auto a = rng.diagram(0, m, 1), b = rng.diagram(0, m, 1);
      std::vector<double> da, db;
      for (const auto& p : a.points)
        if (!p.essential()) da.push_back(std::log(p.death));
      for (const auto& p : b.points)
        if (!p.essential()) db.push_back(std::log(p.death));
      CHECK(log_bottleneck(a, b, 0) == doctest::Approx(oracle::matching_1d(da, db)).epsilon(1e-12));
    }
  }

  TEST_CASE("report json fields") {
    const PersistenceDiagram t = triangle();
    auto rep = check_interleaving(t, t, 0.5, 1);
    ReportContext ctx{"lazy", 3, 2, 1, 10, 2, 4};
    auto j = nlohmann::json::parse(report_json(rep, ctx));
    CHECK(j["epsilon"] == 0.5);
    CHECK(j["mode"] == "lazy");
    CHECK(j["n"] == 3);
    CHECK(j["d"] == 2);
    CHECK(j["k"] == 1);
    REQUIRE(j["per_dim"].size() == 2);
    CHECK(j["per_dim"][1]["dim"] == 1);
    CHECK(j["per_dim"][1]["bound"].get<double>() == doctest::Approx(std::log(1.5)));
    CHECK(j["per_dim"][1]["pass"] == true);
    CHECK(j["tokens"]["adds"] == 10);
    CHECK(j["tokens"]["scales"] == 4);

    PersistenceDiagram lonely{{{0, 0.0, kInfinity}, {0, 0.0, kInfinity}}};
    auto bad = nlohmann::json::parse(report_json(check_interleaving(lonely, t, 0.5, 1), ctx));
    CHECK(bad["per_dim"][0]["bottleneck"].is_null());
    CHECK(bad["per_dim"][0]["pass"] == false);
  }
}
