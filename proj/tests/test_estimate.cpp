#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "phasecoh/error.hpp"
#include "phasecoh/estimate.hpp"

using namespace phasecoh;
using testing::dist;

namespace {
constexpr double kPi = std::numbers::pi;

DensityMatrix qubit(double offdiag) {
  MatC q(2, 2);
  q << 0.5, offdiag, offdiag, 0.5;
  return DensityMatrix(q);
}
}  // namespace

TEST_CASE("plus state with the holevo cost") {
  auto h = CostFunction::holevo();
  auto r = cmin_single(max_coherent(2), h, 2);
  CHECK(r.status == SdpStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
  auto d = cmin_dual(max_coherent(2), h, 2);
  CHECK(d.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(r.value - d.value) <= 1e-6);
  // optimizer is a MIO channel
  REQUIRE(r.optimizer_choi.has_value());
  CHECK(r.optimizer_choi->is_cptp(1e-6));
  CHECK(is_mio(*r.optimizer_choi, 1e-6));
}

TEST_CASE("incoherent states give C0") {
  for (auto c : {CostFunction::holevo(), CostFunction::window(1.0), CostFunction::periodized_mse()}) {
    for (int m : {2, 3, 4}) {
      auto rho = diagonal_state({0.2, 0.5, 0.3});
      double c0 = cost_matrix(c, m).c0;
      CHECK(cmin_single(rho, c, m).value == doctest::Approx(c0).epsilon(1e-6));
      CHECK(cmin_dual(rho, c, m).value == doctest::Approx(c0).epsilon(1e-6));
      CHECK(std::abs(advantage(rho, c, m)) < 1e-6);
      CHECK(weight_bound(rho, c, m) == doctest::Approx(c0).epsilon(1e-6));
    }
  }
}

TEST_CASE("maximally coherent input reaches lambda_min") {
  for (auto c : {CostFunction::holevo(), CostFunction::window(0.8), CostFunction::periodized_mse()}) {
    for (int m : {2, 3, 5}) {
      double lmin = cmin_unconstrained(c, m);
      CHECK(cmin_single(max_coherent(m), c, m).value == doctest::Approx(lmin).epsilon(1e-6));
    }
  }
  CHECK(advantage(max_coherent(3), CostFunction::holevo(), 3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("unconstrained optimum") {
  CHECK(cmin_unconstrained(CostFunction::holevo(), 2) == doctest::Approx(1.0));
  CHECK(cmin_unconstrained(CostFunction::holevo(), 5) == doctest::Approx(4 * std::pow(std::sin(kPi / 12), 2)));
  CHECK(cmin_unconstrained(CostFunction::constant(0.4), 3) == doctest::Approx(0.4));
}

TEST_CASE("qubit closed form") {
  auto h = CostFunction::holevo();
  CHECK(qubit_exact(qubit(0.3), h) == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(qubit_exact(max_coherent(2), h) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qubit_exact(diagonal_state({0.3, 0.7}), h) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cmin_single(qubit(0.3), h, 2).value == doctest::Approx(1.4).epsilon(1e-6));
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    auto rho = random_density(2, rng);
    for (auto c : {CostFunction::holevo(), CostFunction::window(2.0)}) {
      CHECK(std::abs(cmin_single(rho, c, 2).value - qubit_exact(rho, c)) < 1e-5);
      CHECK(std::abs(cmin_dual(rho, c, 2).value - qubit_exact(rho, c)) < 1e-5);
    }
  }
  CHECK_THROWS_AS(qubit_exact(max_coherent(3), h), Error);
}

TEST_CASE("weight bound") {
  auto h = CostFunction::holevo();
  // tight on the isotropic family
  for (int m : {2, 3, 4})
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      auto rho = isotropic_state(m, p);
      CHECK(std::abs(cmin_single(rho, h, m).value - weight_bound(rho, h, m)) < 1e-5);
    }
  // trivial for coherent pure states
  std::mt19937_64 rng(3);
  VecC v = testing::random_matrix(3, 1, rng);
  v.normalize();
  DensityMatrix pure(MatC(v * v.adjoint()));
  CHECK(weight_bound(pure, h, 3) == doctest::Approx(cmin_unconstrained(h, 3)).epsilon(1e-6));
  // and never above the optimum
  for (int i = 0; i < 8; ++i) {
    auto rho = random_density(3, rng);
    CHECK(weight_bound(rho, h, 3) <= cmin_single(rho, h, 3).value + 1e-6);
  }
}

TEST_CASE("cmin lies between lambda_min and C0") {
  std::mt19937_64 rng(30);
  auto w = CostFunction::window(1.2);
  for (int i = 0; i < 8; ++i) {
    auto rho = random_density(3, rng);
    auto y = cost_matrix(w, 4);
    double v = cmin_single(rho, w, 4).value;
    CHECK(v >= y.lambda_min - 1e-7);
    CHECK(v <= y.c0 + 1e-7);
    CHECK(advantage(rho, w, 4) >= -1e-7);
  }
}

TEST_CASE("shift bookkeeping") {
  // C(φ) = −cos φ has minimum −1, so the shift is 1
  auto c = CostFunction::fourier_series({{1, -0.5}, {-1, -0.5}});
  auto r = cmin_single(max_coherent(2), c, 2);
  CHECK(r.shift == doctest::Approx(1.0).epsilon(1e-6));
  auto h = CostFunction::holevo();
  // −cos φ = (holevo − 2)/2, so the unshifted optimum is (1 − 2)/2
  CHECK(r.value - r.shift == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(cmin_single(max_coherent(2), h, 2).shift == 0.0);
}

TEST_CASE("copy counting") {
  CHECK(reduce_copies(2, 1) == 2);
  CHECK(reduce_copies(2, 3) == 4);
  CHECK(reduce_copies(3, 2) == 5);
  CHECK(digit_sum(5, 2) == 2);
  CHECK(digit_sum(8, 3) == 4);
  CHECK_THROWS_AS(reduce_copies(1, 2), Error);
}

TEST_CASE("X matrix") {
  auto h = CostFunction::holevo();
  // n = 1: X = Σ c_{m−n} |nn⟩⟨mm|, the doubled cost matrix
  XMatrix x1 = x_matrix(h, 2, 1);
  auto y = cost_matrix(h, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(std::abs(x1.mat.mat()(a * 2 + a, b * 2 + b) - y.matrix.mat()(b, a)) < 1e-12);
  CHECK(std::abs(x1.mat.mat()(1, 1)) < 1e-15);

  // constant cost: c_0 on pairs with equal digit sums, zero elsewhere
  XMatrix c = x_matrix(CostFunction::constant(0.7), 2, 2);
  SystemDims cd2 = c.mat.dims();
  for (int r = 0; r < cd2.total(); ++r)
    for (int s = 0; s < cd2.total(); ++s) {
      auto dr = cd2.digits(r), ds = cd2.digits(s);
      bool pairs = dr[0] == dr[1] && dr[2] == dr[3] && ds[0] == ds[1] && ds[2] == ds[3];
      double expect = pairs && dr[0] + dr[2] == ds[0] + ds[2] ? 0.7 : 0.0;
      CHECK(std::abs(c.mat.mat()(r, s) - expect) < 1e-12);
    }

  // holevo: nonzero only when the digit sums differ by at most 1
  XMatrix x2 = x_matrix(h, 2, 2);
  CHECK(x2.mat.labels() == Labels{"1", "2", "3", "4"});
  SystemDims sd = x2.mat.dims();
  for (int r = 0; r < sd.total(); ++r)
    for (int s = 0; s < sd.total(); ++s) {
      auto dr = sd.digits(r), ds = sd.digits(s);
      bool diag_pairs = dr[0] == dr[1] && dr[2] == dr[3] && ds[0] == ds[1] && ds[2] == ds[3];
      if (!diag_pairs) {
        CHECK(std::abs(x2.mat.mat()(r, s)) < 1e-15);
        continue;
      }
      int hn = dr[0] + dr[2], hm = ds[0] + ds[2];
      if (std::abs(hn - hm) > 1) CHECK(std::abs(x2.mat.mat()(r, s)) < 1e-12);
    }
}

TEST_CASE("comb SDP matches the single-copy reduction") {
  auto h = CostFunction::holevo();
  auto plus = cmin_single(max_coherent(2), h, 2);
  auto comb1 = relaxed_comb_sdp(max_coherent(2), h, 2, 1);
  CHECK(comb1.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(std::abs(comb1.value - plus.value) < 1e-5);
  CHECK(multicopy_dual_numeric(max_coherent(2), h, 2, 1).value == doctest::Approx(1.0).epsilon(1e-5));

  std::mt19937_64 rng(40);
  for (int i = 0; i < 2; ++i) {
    auto rho = random_density(2, rng);
    double single = cmin_single(rho, h, 3).value;
    CHECK(std::abs(relaxed_comb_sdp(rho, h, 2, 2).value - single) < 1e-4);
    CHECK(std::abs(multicopy_dual_numeric(rho, h, 2, 2).value - single) < 1e-4);
  }
  auto diag = diagonal_state({0.4, 0.6});
  CHECK(relaxed_comb_sdp(diag, h, 2, 2).value == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(multicopy_dual_numeric(diag, h, 2, 2).value == doctest::Approx(2.0).epsilon(1e-5));
  double primal = relaxed_comb_sdp(max_coherent(2), h, 2, 2).value;
  CHECK(std::abs(multicopy_dual_numeric(max_coherent(2), h, 2, 2).value - primal) < 1e-4);
}

TEST_CASE("comb size cap") {
  CHECK_THROWS_AS(relaxed_comb_sdp(max_coherent(2), CostFunction::holevo(), 2, 3), Error);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(cmin_single(max_coherent(2), CostFunction::holevo(), 0), Error);
}
