#pragma once

#include <string>
#include <vector>

#include "phasecoh/channels.hpp"
#include "phasecoh/states.hpp"
#include "phasecoh/tensor.hpp"

namespace phasecoh {

/// Positive operator over alternating system groups: io[2j] are the
/// inputs and io[2j+1] the outputs of tooth j. Groups may be empty.
class Comb {
 public:
  Comb() = default;
  Comb(CMatrix mat, std::vector<Labels> io);
  static Comb from_choi(const ChoiMatrix& j);

  int slots() const { return static_cast<int>(io_.size()) / 2 - 1; }
  const CMatrix& mat() const { return mat_; }
  const std::vector<Labels>& io() const { return io_; }
  const Labels& inputs(int tooth) const { return io_[2 * tooth]; }
  const Labels& outputs(int tooth) const { return io_[2 * tooth + 1]; }
  /// Position of `label` in the io sequence, −1 if absent.
  int time_of(const std::string& label) const;

 private:
  CMatrix mat_;
  std::vector<Labels> io_;
};

/// Tr_shared[(1 ⊗ b^{T_shared})(a ⊗ 1)]; result labels are a's survivors then b's.
CMatrix link(const CMatrix& a, const CMatrix& b);
/// Link with causal bookkeeping: every shared label must be an output of
/// one comb and an input of the other, and the contraction may not close a loop.
CMatrix link(const Comb& a, const Comb& b);

/// Normalization hierarchy check; on failure `diagnostic` names the first failing level.
bool is_comb(const CMatrix& mat, const std::vector<Labels>& io, double tol = 1e-8, std::string* diagnostic = nullptr);
bool is_comb(const Comb& c, double tol = 1e-8, std::string* diagnostic = nullptr);
/// Δ_{in_0..in_j} J = Δ_{in_0..in_j} Δ_{out_0..out_j} J for all j; `failing_level` gets the first bad j.
bool is_mio_compatible(const Comb& c, double tol = 1e-8, int* failing_level = nullptr);

/// Contract channels M_0..M_N over their memory systems (labels shared by two
/// channels). Tooth j has the non-memory inputs and outputs of M_j.
Comb comb_from_network(const std::vector<ChoiMatrix>& channels);

/// Pre-processing 0 → 1,A preparing Φ⁺, post-processing 2,A → 3 measuring the POVM.
/// Systems 0,1,2,3 (qubits) with 3 carrying the outcome.
Comb entangled_probe_superchannel(const Measurement& povm);
Measurement bell_measurement();
/// ½·1_0 ⊗ Σ_i |β_i⟩⟨β_i|_{1,2} ⊗ |i⟩⟨i|_3 with β = (Φ⁺, Φ⁻, Ψ⁺, Ψ⁻).
CMatrix bell_superchannel_closed_form();
/// Two-outcome variant: (Φ⁺+Ψ⁺) ↦ |0⟩, (Φ⁻+Ψ⁻) ↦ |1⟩ on system 3.
Comb two_outcome_bell_superchannel();

/// Channel 1 → 2,B with Choi Φ⁺ ⊗ |+⟩⟨+| + Φ⁻ ⊗ |−⟩⟨−|.
ChoiMatrix coherent_bit_channel();
/// ½·1_0 ⊗ (|+⟩⟨+|_B ⊗ |0⟩⟨0|_3 + |−⟩⟨−|_B ⊗ |1⟩⟨1|_3).
CMatrix extracted_closed_form();

struct CoherentBitExtraction {
  CMatrix linked;        // superchannel applied to the channel, systems 0,B,3
  DensityMatrix output;  // state on B after measuring 3 and correcting
};
CoherentBitExtraction extract_coherent_bit();

}  // namespace phasecoh
