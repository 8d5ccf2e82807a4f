#include <sstream>

#include "helpers.hpp"
#include "phasecoh/error.hpp"
#include "phasecoh/reports.hpp"

using namespace phasecoh;

TEST_CASE("sweep rows respect the weight bound") {
  SweepConfig cfg;
  cfg.d = 3;
  cfg.m = 3;
  cfg.count = 12;
  cfg.seed = 5;
  auto h = CostFunction::holevo();
  auto y = cost_matrix(h, 3);
  auto rows = run_sweep(h, cfg);
  REQUIRE(rows.size() == 12);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.weight_bound <= r.cmin + 1e-6);
    CHECK(r.cmin >= y.lambda_min - 1e-7);
    CHECK(r.cmin <= y.c0 + 1e-7);
    CHECK(r.advantage == doctest::Approx(y.c0 - r.cmin));
  }
}

TEST_CASE("sweep does not depend on the number of jobs") {
  SweepConfig cfg;
  cfg.d = 2;
  cfg.m = 3;
  cfg.count = 6;
  cfg.seed = 77;
  auto h = CostFunction::holevo();
  std::ostringstream a, b;
  write_sweep_csv(a, run_sweep(h, cfg), "");
  cfg.jobs = 3;
  write_sweep_csv(b, run_sweep(h, cfg), "");
  CHECK(a.str() == b.str());
}

TEST_CASE("isotropic sweep sits on the bound line") {
  SweepConfig cfg;
  cfg.d = 3;
  cfg.m = 3;
  cfg.count = 5;
  cfg.ensemble = Ensemble::Isotropic;
  for (const auto& r : run_sweep(CostFunction::holevo(), cfg)) CHECK(std::abs(r.cmin - r.weight_bound) < 1e-5);
}

TEST_CASE("ensemble names") {
  for (auto e : {Ensemble::Ginibre, Ensemble::Pure, Ensemble::Isotropic}) CHECK(ensemble_from_name(ensemble_name(e)) == e);
  CHECK_THROWS_AS(ensemble_from_name("gaussian"), Error);
}

TEST_CASE("SVG output") {
  SweepConfig cfg;
  cfg.d = 2;
  cfg.m = 2;
  cfg.count = 3;
  auto h = CostFunction::holevo();
  std::string svg = sweep_svg(run_sweep(h, cfg), cost_matrix(h, 2));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("cmin report flags") {
  auto j = cmin_report(isotropic_state(3, 0.5), CostFunction::holevo(), 3);
  CHECK(j["consistent"].get<bool>());
  CHECK(std::abs(j["cmin"].get<double>() - j["weight_bound"].get<double>()) < 1e-5);
  CHECK(j["failed_checks"].empty());
}
