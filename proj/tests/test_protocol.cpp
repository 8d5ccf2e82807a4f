#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "phasecoh/channels.hpp"
#include "phasecoh/error.hpp"
#include "phasecoh/protocol.hpp"

using namespace phasecoh;
using testing::dist;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("compiled network layout") {
  auto n22 = compile_network(2, 2);
  CHECK(n22.m_target == 3);
  CHECK(n22.l == 1);
  CHECK(n22.m_prime == 1);
  CHECK(n22.copies_per_qudit == std::vector<int>{1, 1});
  // register index Σ k_i 2^i: 2 = bits (0,1) is sent to 3 = bits (1,1), of phase weight 2
  CHECK(n22.permutation == std::vector<int>{0, 1, 3, 2});
  CHECK(n22.weight(3) == 2);

  auto n21 = compile_network(2, 1);
  CHECK(n21.m_target == 2);
  CHECK(n21.l == 1);
  CHECK(n21.m_prime == 0);
  CHECK(n21.permutation == std::vector<int>{0, 1, 2, 3});

  auto n32 = compile_network(3, 2);
  CHECK(n32.m_target == 5);
  int total = 0;
  for (int c : n32.copies_per_qudit) total += c;
  CHECK(total == 2);

  // every k < M lands on a string of phase weight k
  for (int d = 2; d <= 3; ++d)
    for (int n = 1; n <= 4; ++n) {
      auto net = compile_network(d, n);
      int copies = 0;
      for (int c : net.copies_per_qudit) copies += c;
      CHECK(copies == n);
      for (int k = 0; k < net.m_target; ++k) CHECK(net.weight(net.permutation[k]) == k);
    }
}

TEST_CASE("compiled network channels are MIO") {
  for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    auto net = compile_network(d, n);
    for (const auto& ch : net.channels()) {
      CHECK(ch.is_cptp(1e-10));
      CHECK(is_mio(ch, 1e-10));
    }
  }
}

TEST_CASE("simulation reproduces the target phase unitary") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
  for (auto [d, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    auto net = compile_network(d, n);
    const int m = net.m_target;
    MatC psi = MatC::Constant(m, m, 1.0 / m);
    CHECK(dist(simulate_compiled(net, 0.0, psi), psi) < 1e-12);
    for (int i = 0; i < 3; ++i) {
      double phi = uni(rng);
      MatC v = phase_unitary(m, phi);
      CHECK(dist(simulate_compiled(net, phi, psi), v * psi * v.adjoint()) < 1e-12);
      // basis states only pick up a global phase
      for (int k = 0; k < m; ++k) {
        MatC b = MatC::Zero(m, m);
        b(k, k) = 1.0;
        CHECK(dist(simulate_compiled(net, phi, b), b) < 1e-12);
      }
    }
  }
}

TEST_CASE("simulation validates the input dimension") {
  CHECK_THROWS_AS(simulate_compiled(compile_network(2, 2), 0.1, MatC(MatC::Identity(2, 2))), Error);
}

TEST_CASE("optimal protocol reproduces the SDP value") {
  auto h = CostFunction::holevo();
  auto run = optimal_protocol(max_coherent(2), h, 2, 1, 512);
  CHECK(run.average_cost == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(run.average_cost - run.sdp_value) < 1e-6);
  for (double phi : {0.0, 1.0, 4.0}) CHECK(run.probabilities(phi).sum() == doctest::Approx(1.0));

  auto diag = optimal_protocol(diagonal_state({0.3, 0.7}), h, 2, 1, 256);
  for (double phi : {0.0, 2.0})
    for (int x = 0; x < diag.m; ++x) CHECK(diag.probabilities(phi)(x) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(diag.average_cost == doctest::Approx(2.0).epsilon(1e-6));

  std::mt19937_64 rng(17);
  auto rho = random_density(2, rng);
  auto two = optimal_protocol(rho, h, 2, 2, 512);
  CHECK(two.m == 3);
  CHECK(std::abs(two.average_cost - two.sdp_value) < 1e-6);
}

TEST_CASE("textbook phase estimation") {
  auto exact = textbook_qpe(3, 2 * kPi * 5 / 8, 0, 0);
  CHECK(exact.best == 5);
  CHECK(exact.probabilities(5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(textbook_qpe(4, 0.0, 0, 0).probabilities(0) == doctest::Approx(1.0).epsilon(1e-12));
  auto r = textbook_qpe(4, 2 * kPi * 0.3, 0, 0);
  CHECK(r.best_probability >= 0.405);
  CHECK(r.best_probability >= 4 / (kPi * kPi));
  CHECK(r.probabilities.sum() == doctest::Approx(1.0));
  auto sampled = textbook_qpe(4, 2 * kPi * 0.3, 1000, 3);
  int total = 0;
  for (int c : sampled.counts) total += c;
  CHECK(total == 1000);
  CHECK(sampled.counts == textbook_qpe(4, 2 * kPi * 0.3, 1000, 3).counts);
  CHECK_THROWS_AS(textbook_qpe(0, 0.0, 0, 0), Error);
}
