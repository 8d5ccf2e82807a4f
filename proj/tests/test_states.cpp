#include <cmath>

#include "helpers.hpp"
#include "phasecoh/error.hpp"
#include "phasecoh/states.hpp"

using namespace phasecoh;
using testing::dist;

TEST_CASE("maximally coherent states") {
  CHECK(dist(max_coherent(1).mat(), MatC::Ones(1, 1)) == 0.0);
  CHECK(dist(max_coherent(2).mat(), testing::plus_proj()) < 1e-15);
  CHECK(dist(max_coherent(4).mat(), MatC::Constant(4, 4, 0.25)) < 1e-15);
}

TEST_CASE("density matrix validation") {
  MatC bad(2, 2);
  bad << 1, 0, 0, 1;  // trace 2
  CHECK_THROWS_AS(DensityMatrix{bad}, Error);
  bad << 1.5, 0, 0, -0.5;  // not PSD
  CHECK_THROWS_AS(DensityMatrix{bad}, Error);
  bad << 0.5, 0.5, 0, 0.5;  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix{bad}, Error);
  CHECK_THROWS_AS(diagonal_state({0.5, 0.6}), Error);
  CHECK_THROWS_AS(isotropic_state(3, 1.5), Error);
}

TEST_CASE("l1 coherence") {
  CHECK(l1_coherence(diagonal_state({0.2, 0.3, 0.5})) == 0.0);
  CHECK(l1_coherence(max_coherent(2)) == doctest::Approx(1.0));
  MatC q(2, 2);
  q << 0.5, 0.3, 0.3, 0.5;
  CHECK(l1_coherence(DensityMatrix(q)) == doctest::Approx(0.6));
  CHECK(l1_coherence(max_coherent(5)) == doctest::Approx(4.0));
}

TEST_CASE("weight of coherence") {
  CHECK(weight_of_coherence(DensityMatrix(MatC(MatC::Identity(3, 3) / 3.0))) == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(weight_of_coherence(max_coherent(3)) == doctest::Approx(1.0).epsilon(1e-7));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 3; ++i) {
    VecC v = testing::random_matrix(3, 1, rng);
    v.normalize();
    CHECK(weight_of_coherence(DensityMatrix(MatC(v * v.adjoint()))) == doctest::Approx(1.0).epsilon(1e-6));
  }
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0})
    for (int d : {2, 3, 5}) CHECK(weight_of_coherence(isotropic_state(d, p)) == doctest::Approx(p).epsilon(1e-6));
}

TEST_CASE("weight decomposition reconstructs the state") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 5; ++i) {
    auto rho = random_density(4, rng);
    auto w = weight_decomposition(rho);
    CHECK(w.weight >= -1e-8);
    CHECK(w.weight <= 1 + 1e-8);
    CHECK(w.residual < 1e-6);
    // σ is incoherent, both parts are states
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        if (a != b) CHECK(std::abs(w.sigma(a, b)) < 1e-7);
    CHECK(min_eigenvalue(w.tau) > -1e-6);
    CHECK(min_eigenvalue(w.sigma) > -1e-6);
  }
}

TEST_CASE("robustness of coherence") {
  CHECK(robustness_of_coherence(diagonal_state({0.1, 0.9})) == doctest::Approx(0.0).epsilon(1e-7));
  MatC q(2, 2);
  q << 0.5, 0.3, 0.3, 0.5;
  CHECK(robustness_of_coherence(DensityMatrix(q)) == doctest::Approx(0.6).epsilon(1e-6));
  for (int d : {2, 3, 4}) CHECK(robustness_of_coherence(max_coherent(d)) == doctest::Approx(d - 1.0).epsilon(1e-6));
  // qubits: C_R equals the l1 norm
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    auto rho = random_density(2, rng);
    CHECK(robustness_of_coherence(rho) == doctest::Approx(l1_coherence(rho)).epsilon(1e-6));
  }
}

TEST_CASE("coherence measure orderings") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    auto rho = random_density(3, rng);
    double w = weight_of_coherence(rho), r = robustness_of_coherence(rho), l1 = l1_coherence(rho);
    CHECK(r <= l1 + 1e-6);
    CHECK(w >= -1e-8);
    CHECK(w <= 1 + 1e-8);
  }
}

TEST_CASE("random density matrices") {
  CHECK(dist(random_density(1, 7).mat(), MatC::Ones(1, 1)) < 1e-15);
  CHECK(dist(random_density(3, 42).mat(), random_density(3, 42).mat()) == 0.0);
  CHECK(dist(random_density(3, 42).mat(), random_density(3, 43).mat()) > 1e-3);
  std::mt19937_64 rng(1);
  MatC mean = MatC::Zero(2, 2);
  const int n = 10000;
  for (int i = 0; i < n; ++i) mean += random_density(2, rng).mat();
  mean /= n;
  CHECK(dist(mean, 0.5 * MatC::Identity(2, 2)) < 0.02);
}
