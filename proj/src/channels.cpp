#include "phasecoh/channels.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phasecoh/combs.hpp"
#include "phasecoh/complex_sdp.hpp"

namespace phasecoh {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Measurement::validate(double tol) const {
  require(!effects.empty(), "Measurement: no effects");
  const Eigen::Index d = effects.front().rows();
  MatC sum = MatC::Zero(d, d);
  for (const auto& e : effects) {
    require(e.rows() == d && e.cols() == d, "Measurement: effects differ in size", ErrorKind::DimensionMismatch);
    require(max_abs(e - e.adjoint()) <= tol, "Measurement: effect not Hermitian");
    require(min_eigenvalue(e) >= -tol, "Measurement: effect not positive semidefinite");
    sum += e;
  }
  require(max_abs(sum - MatC::Identity(d, d)) <= tol, "Measurement: effects do not sum to identity");
}

ChoiMatrix choi_from_kraus(const std::vector<MatC>& kraus, const SystemDims& in, const SystemDims& out) {
  require(!kraus.empty(), "choi_from_kraus: empty Kraus set");
  const int din = in.total(), dout = out.total();
  MatC tp = MatC::Zero(din, din);
  MatC j = MatC::Zero(din * dout, din * dout);
  for (const auto& k : kraus) {
    require(k.rows() == dout && k.cols() == din, "choi_from_kraus: Kraus operator has wrong shape",
            ErrorKind::DimensionMismatch);
    tp += k.adjoint() * k;
    // (1 ⊗ K)|Ω⟩ = Σ_n |n⟩ ⊗ K|n⟩
    VecC v(din * dout);
    for (int n = 0; n < din; ++n) v.segment(n * dout, dout) = k.col(n);
    j += v * v.adjoint();
  }
  require(max_abs(tp - MatC::Identity(din, din)) <= 1e-10, "choi_from_kraus: Kraus set is not trace preserving");
  return ChoiMatrix(in, out, j);
}

ChoiMatrix choi_from_kraus(const std::vector<MatC>& kraus, const std::string& in, const std::string& out) {
  require(!kraus.empty(), "choi_from_kraus: empty Kraus set");
  return choi_from_kraus(kraus, SystemDims({in}, {static_cast<int>(kraus.front().cols())}),
                         SystemDims({out}, {static_cast<int>(kraus.front().rows())}));
}

ChoiMatrix unitary_channel(const MatC& u, const std::string& in, const std::string& out) {
  return choi_from_kraus({u}, in, out);
}

ChoiMatrix identity_channel(int d, const std::string& in, const std::string& out) {
  return unitary_channel(MatC::Identity(d, d), in, out);
}

ChoiMatrix dephasing_channel(int d, const std::string& in, const std::string& out) {
  std::vector<MatC> k;
  for (int i = 0; i < d; ++i) {
    MatC p = MatC::Zero(d, d);
    p(i, i) = 1.0;
    k.push_back(p);
  }
  return choi_from_kraus(k, in, out);
}

ChoiMatrix preparation(const CMatrix& state) { return ChoiMatrix(SystemDims(), state.dims(), state.mat()); }

double mio_violation(const ChoiMatrix& j) {
  CMatrix a = dephase(j.mat(), j.in().labels());
  CMatrix b = dephase(a, j.out().labels());
  return max_abs(a.mat() - b.mat());
}

bool is_mio(const ChoiMatrix& j, double tol) { return mio_violation(j) <= tol; }

std::pair<ChoiMatrix, ChoiMatrix> witness_channel_pair(int k, int l, int n, int m, const VecC& psi, const VecC& phi,
                                                     int d1, int d2) {
  require(k != l, "witness_channel_pair: k and l must differ");
  require(k >= 0 && l >= 0 && k < d1 && l < d1, "witness_channel_pair: k, l out of range");
  require(n >= 0 && m >= 0 && n < d2 && m < d2, "witness_channel_pair: n, m out of range");
  require(psi.size() == phi.size() && psi.size() >= 1, "witness_channel_pair: psi and phi must share a dimension",
          ErrorKind::DimensionMismatch);
  require(std::abs(psi.norm() - 1) <= 1e-10 && std::abs(phi.norm() - 1) <= 1e-10,
          "witness_channel_pair: psi and phi must be normalized");
  MatC sum = psi * psi.adjoint() + phi * phi.adjoint();
  MatC off = sum;
  off.diagonal().setZero();
  require(max_abs(off) <= 1e-10, "witness_channel_pair: |psi><psi| + |phi><phi| must be diagonal");
  const int db = static_cast<int>(psi.size());
  auto ket12 = [&](int a, int b) {
    VecC v = VecC::Zero(d1 * d2);
    v(a * d2 + b) = 1.0;
    return v;
  };
  VecC kn = ket12(k, n), lm = ket12(l, m);
  MatC rest = MatC::Identity(d1, d1);
  rest(k, k) = 0.0;
  rest(l, l) = 0.0;
  MatC dkl = Eigen::kroneckerProduct(rest, MatC::Identity(d2 * db, d2 * db) / static_cast<double>(d2 * db));
  auto kron = [](const MatC& a, const MatC& b) { return MatC(Eigen::kroneckerProduct(a, b)); };
  MatC diag12 = kn * kn.adjoint() + lm * lm.adjoint();
  MatC jn = dkl + 0.5 * kron(diag12, sum) +
            0.5 * kron(kn * lm.adjoint() + lm * kn.adjoint(), psi * psi.adjoint() - phi * phi.adjoint());
  MatC jm = dkl + 0.5 * kron(diag12, sum) +
            0.5 * kron(kn * lm.adjoint() - lm * kn.adjoint(), psi * phi.adjoint() - phi * psi.adjoint());
  SystemDims in({"1"}, {d1});
  SystemDims out({"2", "B"}, {d2, db});
  return {ChoiMatrix(in, out, jn), ChoiMatrix(in, out, jm)};
}

MatC phase_unitary(int d, double phi) {
  require(d >= 1, "phase_unitary: d must be >= 1");
  MatC u = MatC::Zero(d, d);
  for (int n = 0; n < d; ++n) u(n, n) = std::exp(cd(0.0, phi * n));
  return u;
}

MatC qft(int d) {
  require(d >= 1, "qft: d must be >= 1");
  MatC f(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    for (int n = 0; n < d; ++n) f(k, n) = s * std::exp(cd(0.0, 2 * kPi * ((static_cast<long>(k) * n) % d) / d));
  return f;
}

MatC random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatC a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      double re = g(rng);
      double im = g(rng);
      a(i, j) = cd(re, im);
    }
  Eigen::HouseholderQR<MatC> qr(a);
  MatC q = qr.householderQ();
  MatC r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

namespace {

ChoiMatrix random_incoherent(int din, int dout, std::mt19937_64& rng, const std::string& in, const std::string& out) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::uniform_int_distribution<int> extra_count(0, 2);
  // Each Kraus operator is injective on its support, so cross terms in Σ K†K vanish.
  std::vector<std::vector<int>> supports;
  std::vector<int> order(din);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int s = 0; s < din; s += dout)
    supports.emplace_back(order.begin() + s, order.begin() + std::min(din, s + dout));
  const int extra = extra_count(rng);
  for (int e = 0; e < extra; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    int size = 1 + static_cast<int>(uni(rng) * std::min(din, dout));
    size = std::min(size, std::min(din, dout));
    supports.emplace_back(order.begin(), order.begin() + size);
  }
  const int na = static_cast<int>(supports.size());
  MatR weight = MatR::Zero(na, din);
  for (int a = 0; a < na; ++a)
    for (int i : supports[a]) weight(a, i) = 0.05 + uni(rng);
  for (int i = 0; i < din; ++i) weight.col(i) /= weight.col(i).sum();
  std::vector<MatC> kraus;
  std::vector<int> targets(dout);
  std::iota(targets.begin(), targets.end(), 0);
  for (int a = 0; a < na; ++a) {
    std::shuffle(targets.begin(), targets.end(), rng);
    MatC k = MatC::Zero(dout, din);
    for (size_t s = 0; s < supports[a].size(); ++s) {
      int i = supports[a][s];
      double th = 2 * kPi * uni(rng);
      k(targets[s], i) = std::sqrt(weight(a, i)) * std::exp(cd(0.0, th));
    }
    kraus.push_back(k);
  }
  return choi_from_kraus(kraus, in, out);
}

ChoiMatrix extremal_mio(int din, int dout, std::mt19937_64& rng, const std::string& in, const std::string& out) {
  const int n = din * dout;
  std::normal_distribution<double> g(0.0, 1.0);
  MatC gm(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double re = g(rng);
      double im = g(rng);
      gm(i, j) = cd(re, im);
    }
  gm = (gm + gm.adjoint()).eval() * 0.5;
  ComplexSdp p;
  p.n = n;
  p.sense = Sense::Maximize;
  p.set_objective(gm);
  // Tr_out J = 1_in
  for (int a = 0; a < din; ++a)
    for (int b = a; b < din; ++b) {
      std::vector<std::tuple<int, int, cd>> w;
      for (int x = 0; x < dout; ++x) w.emplace_back(a * dout + x, b * dout + x, 1.0);
      p.add_functional(w, a == b ? 1.0 : 0.0, a != b);
    }
  // MIO: entries diagonal on input, off-diagonal on output vanish
  for (int a = 0; a < din; ++a)
    for (int x = 0; x < dout; ++x)
      for (int y = x + 1; y < dout; ++y) p.add_functional({{a * dout + x, a * dout + y, 1.0}}, 0.0);
  auto res = solve_complex(p);
  require(res.status == SdpStatus::Optimal, std::string("random_mio: extremal SDP failed: ") + res.message,
          ErrorKind::Solver);
  MatC j = (res.x + res.x.adjoint()) * 0.5;
  auto clean = [&](MatC& m) {
    for (int a = 0; a < din; ++a)
      for (int x = 0; x < dout; ++x)
        for (int y = 0; y < dout; ++y)
          if (x != y) m(a * dout + x, a * dout + y) = 0.0;
  };
  clean(j);
  // Restore Tr_out J = 1 exactly by an input-side congruence.
  MatC t = MatC::Zero(din, din);
  for (int a = 0; a < din; ++a)
    for (int b = 0; b < din; ++b)
      for (int x = 0; x < dout; ++x) t(a, b) += j(a * dout + x, b * dout + x);
  Eigen::SelfAdjointEigenSolver<MatC> es((t + t.adjoint()) * 0.5);
  MatC s = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
  // J ← (S ⊗ 1) J (S ⊗ 1)† maps Tr_out J to S T S = 1.
  MatC a = Eigen::kroneckerProduct(s, MatC::Identity(dout, dout));
  j = a * j * a.adjoint();
  j = (j + j.adjoint()).eval() * 0.5;
  clean(j);
  return ChoiMatrix(SystemDims({in}, {din}), SystemDims({out}, {dout}), j);
}

}  // namespace

ChoiMatrix random_mio(int d_in, int d_out, MioMode mode, std::mt19937_64& rng, const std::string& in,
                      const std::string& out) {
  require(d_in >= 1 && d_out >= 1, "random_mio: dimensions must be >= 1");
  if (mode == MioMode::KrausFamily) return random_incoherent(d_in, d_out, rng, in, out);
  return extremal_mio(d_in, d_out, rng, in, out);
}

ChoiMatrix random_mio(int d_in, int d_out, MioMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_mio(d_in, d_out, mode, rng);
}

ChoiMatrix compose(const ChoiMatrix& first, const ChoiMatrix& second) {
  require(first.out().dims() == second.in().dims(), "compose: output of first does not match input of second",
          ErrorKind::DimensionMismatch);
  // Relabel so the shared systems line up, then contract.
  Labels mid;
  for (int k = 0; k < first.out().size(); ++k) mid.push_back("#mid" + std::to_string(k));
  CMatrix a = first.mat().relabel([&] {
    Labels l = first.in().labels();
    l.insert(l.end(), mid.begin(), mid.end());
    return l;
  }());
  CMatrix b = second.mat().relabel([&] {
    Labels l = mid;
    for (const auto& x : second.out().labels()) l.push_back(x);
    return l;
  }());
  CMatrix c = link(a, b);
  return ChoiMatrix(first.in(), second.out(), c);
}

}  // namespace phasecoh
