#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "phasecoh/channels.hpp"
#include "phasecoh/error.hpp"

using namespace phasecoh;
using testing::dist;

namespace {
constexpr double kPi = std::numbers::pi;

MatC hadamard() {
  MatC h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}
}  // namespace

TEST_CASE("Choi matrices from Kraus operators") {
  ChoiMatrix id = choi_from_kraus({MatC::Identity(3, 3)});
  MatC expect = MatC::Zero(9, 9);
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m) expect(n * 3 + n, m * 3 + m) = 1.0;
  CHECK(dist(id.mat().mat(), expect) == 0.0);

  std::vector<MatC> proj;
  for (int i = 0; i < 3; ++i) {
    MatC p = MatC::Zero(3, 3);
    p(i, i) = 1.0;
    proj.push_back(p);
  }
  ChoiMatrix dep = choi_from_kraus(proj);
  MatC dexp = MatC::Zero(9, 9);
  for (int n = 0; n < 3; ++n) dexp(n * 3 + n, n * 3 + n) = 1.0;
  CHECK(dist(dep.mat().mat(), dexp) == 0.0);

  ChoiMatrix h = unitary_channel(hadamard());
  VecR ev = eig_hermitian(h.mat()).values;  // rank one, eigenvalue 2
  CHECK(ev(3) == doctest::Approx(2.0));
  CHECK(std::abs(ev(2)) < 1e-12);
  MatC zero = MatC::Zero(2, 2);
  zero(0, 0) = 1.0;
  CHECK(dist(apply_choi(h, CMatrix("in", zero)).mat(), testing::plus_proj()) < 1e-15);
}

TEST_CASE("choi_from_kraus rejects non trace-preserving sets") {
  MatC half = 0.5 * MatC::Identity(2, 2);
  CHECK_THROWS_AS(choi_from_kraus({half}), Error);
  CHECK_THROWS_AS(choi_from_kraus({MatC::Identity(2, 3)}), Error);
}

TEST_CASE("MIO membership") {
  CHECK(is_mio(dephasing_channel(3)));
  CHECK(is_mio(identity_channel(3)));
  CHECK_FALSE(is_mio(unitary_channel(hadamard())));
  CHECK(mio_violation(unitary_channel(hadamard())) > 0.1);
  CHECK(is_mio(unitary_channel(phase_unitary(3, 1.1))));
}

TEST_CASE("witness channel pair") {
  VecC psi = VecC::Unit(2, 0), phi = VecC::Unit(2, 1);
  auto [jn, jm] = witness_channel_pair(0, 1, 0, 1, psi, phi, 2, 2);
  for (const auto* j : {&jn, &jm}) {
    CHECK(min_eigenvalue(j->mat().mat()) > -1e-12);
    CHECK(dist(partial_trace(j->mat(), j->out().labels()).mat(), MatC::Identity(2, 2)) < 1e-12);
    CHECK(is_mio(*j));
  }
  // Bell-diagonal pair ψ± = (|00⟩ ± |11⟩)/√2 on a two-qubit memory
  VecC bp = VecC::Zero(4), bm = VecC::Zero(4);
  bp(0) = bp(3) = 1 / std::sqrt(2.0);
  bm(0) = 1 / std::sqrt(2.0);
  bm(3) = -1 / std::sqrt(2.0);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      if (k == l) continue;
      for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
          auto [a, b] = witness_channel_pair(k, l, n, m, bp, bm, 3, 2);
          CHECK(a.is_cptp(1e-10));
          CHECK(b.is_cptp(1e-10));
          CHECK(is_mio(a));
          CHECK(is_mio(b));
        }
    }
  CHECK_THROWS_AS(witness_channel_pair(0, 0, 0, 1, psi, phi, 2, 2), Error);
}

TEST_CASE("phase unitary and Fourier matrix") {
  CHECK(dist(phase_unitary(4, 0.0), MatC::Identity(4, 4)) == 0.0);
  MatC z = MatC::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  CHECK(dist(phase_unitary(2, kPi), z) < 1e-15);
  for (int d : {2, 3, 5}) {
    MatC f = qft(d);
    CHECK(dist(f * f.adjoint(), MatC::Identity(d, d)) < 1e-14);
    CHECK(dist(f.col(0), MatC::Constant(d, 1, 1.0 / std::sqrt(d))) < 1e-15);
  }
  CHECK(dist(qft(2), hadamard()) < 1e-15);
}

TEST_CASE("random MIO channels") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 6; ++i) {
    int din = 1 + i % 3, dout = 1 + (i + 1) % 3;
    ChoiMatrix k = random_mio(din, dout, MioMode::KrausFamily, rng);
    CHECK(k.is_cptp(1e-9));
    CHECK(is_mio(k));
    ChoiMatrix s = random_mio(din, dout, MioMode::SdpExtremal, rng);
    CHECK(s.is_cptp(1e-8));
    CHECK(is_mio(s, 1e-8));
  }
  ChoiMatrix t = random_mio(1, 1, MioMode::KrausFamily, rng);
  CHECK(dist(t.mat().mat(), MatC::Ones(1, 1)) < 1e-12);
  CHECK(dist(random_mio(2, 3, MioMode::SdpExtremal, 5).mat().mat(),
             random_mio(2, 3, MioMode::SdpExtremal, 5).mat().mat()) == 0.0);
}

TEST_CASE("composition of channels") {
  ChoiMatrix u = unitary_channel(hadamard(), "a", "b");
  ChoiMatrix v = unitary_channel(hadamard(), "b", "c");
  ChoiMatrix uv = compose(u, v);
  CHECK(dist(uv.mat().mat(), identity_channel(2, "a", "c").mat().mat()) < 1e-14);
  std::mt19937_64 rng(1);
  ChoiMatrix m1 = random_mio(2, 3, MioMode::KrausFamily, rng, "a", "b");
  ChoiMatrix m2 = random_mio(3, 2, MioMode::SdpExtremal, rng, "b", "c");
  ChoiMatrix c = compose(m1, m2);
  CHECK(c.is_cptp(1e-8));
  CHECK(is_mio(c, 1e-8));
  MatC rho = testing::plus_proj();
  CMatrix direct = apply_choi(m2, apply_choi(m1, CMatrix("a", rho)));
  CHECK(dist(apply_choi(c, CMatrix("a", rho)).mat(), direct.mat()) < 1e-12);
}

TEST_CASE("measurement validation") {
  Measurement m;
  m.effects = {MatC::Identity(2, 2) * 0.5, MatC::Identity(2, 2) * 0.5};
  CHECK_NOTHROW(m.validate());
  m.effects.pop_back();
  CHECK_THROWS_AS(m.validate(), Error);
}
