#include "phasecoh/protocol.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "phasecoh/estimate.hpp"

namespace phasecoh {

namespace {

int ipow(int b, int e) {
  int r = 1;
  for (int k = 0; k < e; ++k) r *= b;
  return r;
}

int digit(int s, int i, int d) { return (s / ipow(d, i)) % d; }

// SWAP of register qudit i with the black-box slot, on register ⊗ slot.
MatC swap_with_slot(int dim, int d, int i) {
  MatC u = MatC::Zero(dim * d, dim * d);
  const int w = ipow(d, i);
  for (int s = 0; s < dim; ++s)
    for (int j = 0; j < d; ++j) {
      int ki = digit(s, i, d);
      int s2 = s + (j - ki) * w;
      u(s2 * d + ki, s * d + j) = 1.0;
    }
  return u;
}

}  // namespace

int CompiledNetwork::register_dim() const { return ipow(d, l + 1); }

int CompiledNetwork::weight(int s) const {
  int w = 0;
  for (int i = 0; i <= l; ++i) w += digit(s, i, d) * copies_per_qudit[i];
  return w;
}

MatC CompiledNetwork::embedding() const {
  MatC w = MatC::Zero(register_dim(), m_target);
  for (int k = 0; k < m_target; ++k) w(k, k) = 1.0;
  return w;
}

MatC CompiledNetwork::permutation_unitary() const {
  const int dim = register_dim();
  MatC u = MatC::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) u(permutation[k], k) = 1.0;
  return u;
}

MatC CompiledNetwork::projector_kept() const {
  MatC p = MatC::Zero(m_target, register_dim());
  for (int k = 0; k < m_target; ++k) p(k, k) = 1.0;
  return p;
}

std::vector<MatC> CompiledNetwork::overflow_kraus() const {
  std::vector<MatC> out;
  for (int k = m_target; k < register_dim(); ++k) {
    MatC p = MatC::Zero(m_target, register_dim());
    p(0, k) = 1.0;
    out.push_back(p);
  }
  return out;
}

std::vector<ChoiMatrix> CompiledNetwork::channels() const {
  std::vector<ChoiMatrix> out;
  out.push_back(choi_from_kraus({embedding()}, "in", "reg"));
  out.push_back(unitary_channel(permutation_unitary(), "reg", "reg'"));
  for (int i = 0; i <= l; ++i)
    if (copies_per_qudit[i] > 0) out.push_back(unitary_channel(swap_with_slot(register_dim(), d, i), "joint", "joint'"));
  out.push_back(unitary_channel(permutation_unitary().adjoint(), "reg", "reg'"));
  std::vector<MatC> readout = overflow_kraus();
  readout.insert(readout.begin(), projector_kept());
  out.push_back(choi_from_kraus(readout, "reg", "out"));
  return out;
}

CompiledNetwork compile_network(int d, int n) {
  require(d >= 2, "compile_network: d must be >= 2");
  require(n >= 1, "compile_network: n must be >= 1");
  CompiledNetwork net;
  net.d = d;
  net.n = n;
  net.m_target = reduce_copies(d, n);
  int l = 0;
  while ((ipow(d, l + 1) - 1) / (d - 1) <= n) ++l;
  net.l = l;
  net.m_prime = n - (ipow(d, l) - 1) / (d - 1);
  for (int i = 0; i < l; ++i) net.copies_per_qudit.push_back(ipow(d, i));
  net.copies_per_qudit.push_back(net.m_prime);
  const int dim = net.register_dim();
  require(dim <= 256, "compile_network: register dimension exceeds 256");

  // k < M goes to a string of weight k, itself when possible; the rest fill the leftovers
  std::vector<int> perm(dim, -1);
  std::vector<bool> used(dim, false);
  for (int k = 0; k < net.m_target; ++k) {
    int pick = -1;
    if (net.weight(k) == k && !used[k]) pick = k;
    for (int s = 0; s < dim && pick < 0; ++s)
      if (!used[s] && net.weight(s) == k) pick = s;
    require(pick >= 0, "compile_network: no register string with the required phase weight", ErrorKind::Verification);
    perm[k] = pick;
    used[pick] = true;
  }
  for (int k = net.m_target; k < dim; ++k) {
    int pick = used[k] ? -1 : k;
    for (int s = 0; s < dim && pick < 0; ++s)
      if (!used[s]) pick = s;
    perm[k] = pick;
    used[pick] = true;
  }
  net.permutation = perm;
  return net;
}

MatC simulate_compiled(const CompiledNetwork& net, double phi, const MatC& input) {
  require(input.rows() == net.m_target && input.cols() == net.m_target, "simulate_compiled: input must have dimension M",
          ErrorKind::DimensionMismatch);
  const int dim = net.register_dim();
  const int d = net.d;
  MatC w = net.embedding();
  MatC p = net.permutation_unitary();
  MatC reg = p * w * input * w.adjoint() * p.adjoint();

  MatC v = phase_unitary(d, phi);
  MatC slot0 = MatC::Zero(d, d);
  slot0(0, 0) = 1.0;
  for (int i = 0; i <= net.l; ++i) {
    int copies = net.copies_per_qudit[i];
    if (copies == 0) continue;
    // register ⊗ slot, slot least significant
    MatC joint = MatC::Zero(dim * d, dim * d);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) joint.block(a * d, b * d, d, d) = reg(a, b) * slot0;
    MatC sw = swap_with_slot(dim, d, i);
    MatC vs = MatC::Identity(d, d);
    for (int c = 0; c < copies; ++c) vs = v * vs;
    MatC u = MatC::Zero(dim * d, dim * d);
    for (int a = 0; a < dim; ++a) u.block(a * d, a * d, d, d) = vs;
    joint = sw * u * sw * joint * sw.adjoint() * u.adjoint() * sw.adjoint();
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) reg(a, b) = joint.block(a * d, b * d, d, d).trace();
  }
  reg = p.adjoint() * reg * p;
  MatC k1 = net.projector_kept();
  MatC out = k1 * reg * k1.adjoint();
  for (const auto& k : net.overflow_kraus()) out += k * reg * k.adjoint();
  return out;
}

DensityMatrix simulate_compiled(const CompiledNetwork& net, double phi, const DensityMatrix& input) {
  return DensityMatrix(simulate_compiled(net, phi, input.mat()), input.label(), 1e-8);
}

VecR ProtocolRun::probabilities(double phi) const {
  MatC out = simulate_compiled(network, phi, probe);
  MatC f = qft(m);
  MatC rot = f.adjoint() * out * f;
  VecR p(m);
  for (int x = 0; x < m; ++x) p(x) = rot(x, x).real();
  return p;
}

double average_cost(const ProtocolRun& run, const CostFunction& c, int points) {
  require(points >= 8, "average_cost: need at least 8 quadrature points");
  double acc = 0.0;
  for (int j = 0; j < points; ++j) {
    double phi = 2 * std::numbers::pi * j / points;
    VecR p = run.probabilities(phi);
    for (int x = 0; x < run.m; ++x) acc += p(x) * c(phi - run.estimates[x]);
  }
  return acc / points;
}

ProtocolRun optimal_protocol(const DensityMatrix& rho, const CostFunction& c, int d, int n, int quadrature_points) {
  ProtocolRun run;
  run.d = d;
  run.n = n;
  run.m = reduce_copies(d, n);
  run.network = compile_network(d, n);
  EstimationResult best = cmin_single(rho, c, run.m);
  run.sdp_value = best.value;
  run.probe = apply_choi(*best.optimizer_choi, rho.cmat()).mat();
  for (int x = 0; x < run.m; ++x) run.estimates.push_back(2 * std::numbers::pi * x / run.m);
  run.quadrature_points = quadrature_points;
  run.average_cost = average_cost(run, c, quadrature_points);
  return run;
}

QpeResult textbook_qpe(int t, double phi, int trials, std::uint64_t seed) {
  require(t >= 1 && t <= 10, "textbook_qpe: t must be in [1, 10]");
  require(trials >= 0, "textbook_qpe: trials must be >= 0");
  const int dim = 1 << t;
  QpeResult r;
  r.t = t;
  r.phi = phi;
  r.probabilities = VecR(dim);
  // ⟨k|F†V_φ|uniform⟩ = (1/D) Σ_n e^{in(φ − 2πk/D)}
  for (int k = 0; k < dim; ++k) {
    cd amp = 0.0;
    for (int n = 0; n < dim; ++n) amp += std::exp(cd(0.0, n * (phi - 2 * std::numbers::pi * k / dim)));
    amp /= static_cast<double>(dim);
    r.probabilities(k) = std::norm(amp);
  }
  double turns = phi / (2 * std::numbers::pi) * dim;
  long nearest = std::lround(turns);
  r.best = static_cast<int>(((nearest % dim) + dim) % dim);
  r.best_probability = r.probabilities(r.best);
  r.counts.assign(dim, 0);
  if (trials > 0) {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> dist(r.probabilities.data(), r.probabilities.data() + dim);
    for (int i = 0; i < trials; ++i) ++r.counts[dist(rng)];
  }
  return r;
}

}  // namespace phasecoh
