#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "phasecoh/tensor.hpp"

namespace phasecoh {

/// POVM {M_x}: PSD effects summing to identity.
struct Measurement {
  std::vector<MatC> effects;
  void validate(double tol = 1e-10) const;
};

/// J = Σ_k (1 ⊗ K_k)|Ω⟩⟨Ω|(1 ⊗ K_k)†, |Ω⟩ = Σ|nn⟩ unnormalized.
ChoiMatrix choi_from_kraus(const std::vector<MatC>& kraus, const SystemDims& in, const SystemDims& out);
ChoiMatrix choi_from_kraus(const std::vector<MatC>& kraus, const std::string& in = "in",
                           const std::string& out = "out");
ChoiMatrix unitary_channel(const MatC& u, const std::string& in = "in", const std::string& out = "out");
ChoiMatrix identity_channel(int d, const std::string& in = "in", const std::string& out = "out");
ChoiMatrix dephasing_channel(int d, const std::string& in = "in", const std::string& out = "out");
/// Choi matrix of a channel with trivial input preparing `state` on `out`.
ChoiMatrix preparation(const CMatrix& state);

/// Δ_in J = Δ_in Δ_out J within `tol` (max-norm).
bool is_mio(const ChoiMatrix& j, double tol = 1e-9);
double mio_violation(const ChoiMatrix& j);

/// Pair of channels 1 → 2,B that agree on the diagonal but are told apart by a coherent probe.
std::pair<ChoiMatrix, ChoiMatrix> witness_channel_pair(int k, int l, int n, int m, const VecC& psi, const VecC& phi,
                                                     int d1, int d2);

MatC phase_unitary(int d, double phi);
MatC qft(int d);
MatC random_unitary(int d, std::mt19937_64& rng);

enum class MioMode { KrausFamily, SdpExtremal };
ChoiMatrix random_mio(int d_in, int d_out, MioMode mode, std::mt19937_64& rng, const std::string& in = "in",
                      const std::string& out = "out");
ChoiMatrix random_mio(int d_in, int d_out, MioMode mode, std::uint64_t seed);

/// Sequential composition: second ∘ first (first's output labels feed second's input).
ChoiMatrix compose(const ChoiMatrix& first, const ChoiMatrix& second);

}  // namespace phasecoh
