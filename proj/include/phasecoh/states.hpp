#pragma once

#include <cstdint>
#include <random>

#include "phasecoh/sdp.hpp"
#include "phasecoh/tensor.hpp"

namespace phasecoh {

/// PSD, unit-trace operator on a single labeled system.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(CMatrix m, double tol = 1e-10);
  explicit DensityMatrix(const MatC& m, const std::string& label = "0", double tol = 1e-10);

  const CMatrix& cmat() const { return mat_; }
  const MatC& mat() const { return mat_.mat(); }
  int dim() const { return mat_.rows(); }
  const std::string& label() const { return mat_.labels().front(); }
  bool is_diagonal(double tol = 1e-12) const;

 private:
  CMatrix mat_;
};

DensityMatrix max_coherent(int d);
/// Σ_i p_i |i⟩⟨i|.
DensityMatrix diagonal_state(const std::vector<double>& p);
/// p·Ψ⁺_d + (1−p)·1/d.
DensityMatrix isotropic_state(int d, double p);
/// Ginibre ensemble: ρ = GG†/Tr(GG†) with G complex Gaussian.
DensityMatrix random_density(int d, std::mt19937_64& rng);
DensityMatrix random_density(int d, std::uint64_t seed);

double l1_coherence(const DensityMatrix& rho);

/// ρ = (1 − W)σ + Wτ with σ incoherent.
struct WeightDecomposition {
  double weight = 0.0;
  MatC sigma;
  MatC tau;
  double residual = 0.0;  // max-norm of ρ − (1−W)σ − Wτ
  double gap = 0.0;
};

WeightDecomposition weight_decomposition(const DensityMatrix& rho, const SdpOptions& opt = {});
double weight_of_coherence(const DensityMatrix& rho, const SdpOptions& opt = {});
double robustness_of_coherence(const DensityMatrix& rho, const SdpOptions& opt = {});

}  // namespace phasecoh
