#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "phasecoh/channels.hpp"
#include "phasecoh/error.hpp"
#include "phasecoh/estimate.hpp"
#include "phasecoh/serialize.hpp"

using namespace phasecoh;
using testing::dist;

TEST_CASE("matrix JSON round trip") {
  std::mt19937_64 rng(1);
  MatC m = testing::random_matrix(3, 2, rng);
  CHECK(dist(matrix_from_json(matrix_to_json(m)), m) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1, 2], [3]]})")), Error);
}

TEST_CASE("cost round trips") {
  for (auto c : {CostFunction::holevo(), CostFunction::window(0.9), CostFunction::periodized_mse(),
                 CostFunction::constant(0.25), CostFunction::fourier_series({{0, 1.0}, {2, cd(0.1, 0.2)}, {-2, cd(0.1, -0.2)}})}) {
    CostFunction back = cost_from_json(cost_to_json(c));
    for (int k = -4; k <= 4; ++k) CHECK(std::abs(back.coefficient(k) - c.coefficient(k)) < 1e-9);
  }
}

TEST_CASE("cost specs") {
  CHECK(cost_from_spec("holevo").kind() == CostFunction::Kind::Holevo);
  CHECK(cost_from_spec("window:1.5708").window_delta() == doctest::Approx(1.5708));
  CHECK(cost_from_spec("constant:2").coefficient(0).real() == doctest::Approx(2.0));
  CHECK(cost_from_spec(R"({"kind": "fourier-series", "coefficients": [[0, 1, 0], [1, -0.5, 0], [-1, -0.5, 0]]})")
            .coefficient(1)
            .real() == doctest::Approx(-0.5));
  CHECK_THROWS_AS(cost_from_spec("nonsense"), Error);
  CHECK_THROWS_AS(cost_from_spec("window:abc"), Error);
  CHECK_THROWS_AS(cost_from_spec("/nonexistent/file.json"), Error);
}

TEST_CASE("state specs and JSON") {
  CHECK(dist(state_from_spec("plus", 2).mat(), testing::plus_proj()) < 1e-15);
  CHECK(dist(state_from_spec("max-coherent", 3).mat(), max_coherent(3).mat()) < 1e-15);
  CHECK(dist(state_from_spec("isotropic:0.4", 3).mat(), isotropic_state(3, 0.4).mat()) < 1e-15);
  CHECK(dist(state_from_spec("diagonal:0.2,0.8", 2).mat(), diagonal_state({0.2, 0.8}).mat()) < 1e-15);
  CHECK(dist(state_from_spec("pure:1,1", 2).mat(), testing::plus_proj()) < 1e-15);
  CHECK(dist(state_from_spec("random:7", 3).mat(), random_density(3, 7).mat()) == 0.0);
  auto rho = random_density(3, 11);
  CHECK(dist(density_from_json(density_to_json(rho)).mat(), rho.mat()) == 0.0);
  CHECK(dist(state_from_spec(density_to_json(rho).dump(), 0).mat(), rho.mat()) == 0.0);
  CHECK_THROWS_AS(state_from_spec("diagonal:0.5,0.6", 2), Error);
  CHECK_THROWS_AS(state_from_spec("what", 2), Error);
}

TEST_CASE("state and cost specs from files") {
  std::string path = "serialize_state_test.json";
  {
    std::ofstream f(path);
    f << density_to_json(max_coherent(2)).dump();
  }
  CHECK(dist(state_from_spec(path, 0).mat(), testing::plus_proj()) < 1e-15);
  {
    std::ofstream f(path);
    f << cost_to_json(CostFunction::window(0.5)).dump();
  }
  CHECK(cost_from_spec(path).window_delta() == doctest::Approx(0.5));
  std::remove(path.c_str());
}

TEST_CASE("Choi and comb round trips") {
  std::mt19937_64 rng(2);
  ChoiMatrix ch = random_mio(2, 3, MioMode::KrausFamily, rng, "a", "b");
  ChoiMatrix back = choi_from_json(choi_to_json(ch));
  CHECK(back.in() == ch.in());
  CHECK(back.out() == ch.out());
  CHECK(dist(back.mat().mat(), ch.mat().mat()) == 0.0);
  Comb c = Comb::from_choi(ch);
  Comb cb = comb_from_json(comb_to_json(c));
  CHECK(cb.io() == c.io());
  CHECK(dist(cb.mat().mat(), c.mat().mat()) == 0.0);
}

TEST_CASE("estimation result round trip") {
  auto r = cmin_single(max_coherent(2), CostFunction::holevo(), 2);
  auto back = result_from_json(result_to_json(r, true));
  CHECK(back.value == r.value);
  CHECK(back.dual_value == r.dual_value);
  CHECK(back.status == r.status);
  REQUIRE(back.optimizer_choi.has_value());
  CHECK(dist(back.optimizer_choi->mat().mat(), r.optimizer_choi->mat().mat()) == 0.0);
}

TEST_CASE("sweep CSV round trip") {
  std::vector<SweepRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].index = i;
    rows[i].weight = 0.1 * i + 1e-17;
    rows[i].robustness_scaled = 1.0 / 3.0;
    rows[i].cmin = 1.2345678901234567;
    rows[i].weight_bound = 1.1;
    rows[i].advantage = 0.7;
  }
  rows[2].ok = false;
  rows[2].note = "solver failed, badly";
  std::stringstream ss;
  write_sweep_csv(ss, rows, "2026-01-01T00:00:00Z");
  CHECK(ss.str().rfind("# generated 2026-01-01T00:00:00Z\n", 0) == 0);
  auto back = read_sweep_csv(ss);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].index == i);
    CHECK(back[i].weight == rows[i].weight);
    CHECK(back[i].cmin == rows[i].cmin);
    CHECK(back[i].robustness_scaled == rows[i].robustness_scaled);
    CHECK(back[i].ok == rows[i].ok);
  }
  std::stringstream bare;
  write_sweep_csv(bare, rows, "");
  CHECK(bare.str().rfind("index,", 0) == 0);
}

TEST_CASE("doubles are written losslessly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) CHECK(std::stod(format_double(v)) == v);
}
