#include "phasecoh/states.hpp"

#include <cmath>
#include <sstream>

#include "phasecoh/complex_sdp.hpp"

namespace phasecoh {

DensityMatrix::DensityMatrix(CMatrix m, double tol) : mat_(std::move(m)) {
  require(mat_.dims().size() == 1, "DensityMatrix: expected a single system");
  require(mat_.is_hermitian(tol), "DensityMatrix: not Hermitian");
  require(std::abs(mat_.trace() - 1.0) <= tol, "DensityMatrix: trace differs from 1");
  require(min_eigenvalue(mat_.mat()) >= -tol, "DensityMatrix: not positive semidefinite");
}

DensityMatrix::DensityMatrix(const MatC& m, const std::string& label, double tol)
    : DensityMatrix(CMatrix(label, m), tol) {}

bool DensityMatrix::is_diagonal(double tol) const {
  MatC off = mat();
  off.diagonal().setZero();
  return max_abs(off) <= tol;
}

DensityMatrix max_coherent(int d) {
  require(d >= 1, "max_coherent: d must be >= 1");
  return DensityMatrix(MatC::Constant(d, d, cd(1.0 / d)));
}

DensityMatrix diagonal_state(const std::vector<double>& p) {
  require(!p.empty(), "diagonal_state: empty distribution");
  MatC m = MatC::Zero(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
  return DensityMatrix(m);
}

DensityMatrix isotropic_state(int d, double p) {
  require(p >= 0.0 && p <= 1.0, "isotropic_state: p must lie in [0, 1]");
  MatC m = p * max_coherent(d).mat() + (1 - p) / d * MatC::Identity(d, d);
  return DensityMatrix(m);
}

DensityMatrix random_density(int d, std::mt19937_64& rng) {
  require(d >= 1, "random_density: d must be >= 1");
  std::normal_distribution<double> g(0.0, 1.0);
  MatC a(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      double re = g(rng);
      double im = g(rng);
      a(i, j) = cd(re, im);
    }
  MatC r = a * a.adjoint();
  r /= r.trace().real();
  r = (r + r.adjoint()).eval() * 0.5;
  return DensityMatrix(r);
}

DensityMatrix random_density(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_density(d, rng);
}

double l1_coherence(const DensityMatrix& rho) {
  double s = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) s += std::abs(rho.mat()(i, j));
  return s;
}

WeightDecomposition weight_decomposition(const DensityMatrix& rho, const SdpOptions& opt) {
  const int d = rho.dim();
  const MatC& r = rho.mat();
  WeightDecomposition out;
  if (d == 1) {
    out.sigma = r;
    out.tau = r;
    return out;
  }
  // min Tr T  s.t.  T_pq = ρ_pq (p ≠ q),  T_pp + D_p = ρ_pp,  T ⪰ 0, D ≥ 0
  ComplexSdp p;
  p.n = d;
  p.scalars = d;
  p.set_objective(MatC::Identity(d, d));
  for (int q = 0; q < d; ++q)
    for (int k = 0; k < q; ++k) p.add_functional({{k, q, 1.0}}, r(k, q));
  for (int k = 0; k < d; ++k) {
    ComplexRow row;
    row.h = {{k, k, 1.0}};
    row.scalars = {{k, 1.0}};
    row.rhs = r(k, k).real();
    p.rows.push_back(row);
  }
  auto res = solve_complex(p, opt);
  require_solved(res, 1e-6, "weight of coherence");
  MatC t = res.x;
  MatC dmat = MatC::Zero(d, d);
  for (int k = 0; k < d; ++k) dmat(k, k) = res.s(k);
  double w = t.trace().real();
  out.weight = w;
  out.gap = res.gap;
  out.tau = w > 1e-12 ? MatC(t / w) : r;
  double dtr = dmat.trace().real();
  out.sigma = dtr > 1e-12 ? MatC(dmat / dtr) : MatC(MatC::Identity(d, d) / static_cast<double>(d));
  out.residual = max_abs(r - (1 - w) * out.sigma - w * out.tau);
  return out;
}

double weight_of_coherence(const DensityMatrix& rho, const SdpOptions& opt) {
  return weight_decomposition(rho, opt).weight;
}

double robustness_of_coherence(const DensityMatrix& rho, const SdpOptions& opt) {
  const int d = rho.dim();
  if (d == 1) return 0.0;
  // min Tr S  s.t.  S_pq = −ρ_pq (p ≠ q), S ⪰ 0; then D = ρ + S is diagonal with Tr D = 1 + Tr S
  ComplexSdp p;
  p.n = d;
  p.set_objective(MatC::Identity(d, d));
  for (int q = 0; q < d; ++q)
    for (int k = 0; k < q; ++k) p.add_functional({{k, q, 1.0}}, -rho.mat()(k, q));
  auto res = solve_complex(p, opt);
  require_solved(res, 1e-6, "robustness of coherence");
  return res.primal;
}

}  // namespace phasecoh
