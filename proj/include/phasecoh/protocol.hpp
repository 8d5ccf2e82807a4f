#pragma once

#include <cstdint>
#include <vector>

#include "phasecoh/channels.hpp"
#include "phasecoh/cost.hpp"
#include "phasecoh/states.hpp"

namespace phasecoh {

/// Network turning n copies of V_φ^(d) into one V_φ^(M), M = (d−1)n + 1.
/// Register: l+1 qudits, flat index Σ k_i d^i (qudit 0 least significant).
struct CompiledNetwork {
  int d = 0;
  int n = 0;
  int m_target = 0;
  int l = 0;
  int m_prime = 0;
  std::vector<int> copies_per_qudit;  // d^0, ..., d^{l−1}, M′
  std::vector<int> permutation;       // register basis index k ↦ π(k)

  int register_dim() const;
  /// Phase multiplier of register basis state `s` under the copy assignment.
  int weight(int s) const;
  MatC embedding() const;   // W_e, register × M
  MatC permutation_unitary() const;
  MatC projector_kept() const;     // Π₁, M × register
  std::vector<MatC> overflow_kraus() const;  // |0⟩⟨k| for each overflow state k
  /// Every constituent channel of the network, each a MIO channel.
  std::vector<ChoiMatrix> channels() const;
};

CompiledNetwork compile_network(int d, int n);
/// Runs the network with black box V_φ^(d); returns the output state on M levels.
MatC simulate_compiled(const CompiledNetwork& net, double phi, const MatC& input);
DensityMatrix simulate_compiled(const CompiledNetwork& net, double phi, const DensityMatrix& input);

struct ProtocolRun {
  int d = 0;
  int n = 0;
  int m = 0;
  MatC probe;                   // M*(ρ)
  CompiledNetwork network;
  std::vector<double> estimates;  // 2πx/M
  double sdp_value = 0.0;       // shifted optimum reported by the SDP
  double average_cost = 0.0;    // quadrature estimate of the shifted average cost
  int quadrature_points = 0;

  /// Outcome distribution p(x|φ) after the Fourier measurement.
  VecR probabilities(double phi) const;
};

ProtocolRun optimal_protocol(const DensityMatrix& rho, const CostFunction& c, int d, int n,
                             int quadrature_points = 2048);
/// Trapezoid average of Σ_x p(x|φ) C(φ − φ̂_x) over φ.
double average_cost(const ProtocolRun& run, const CostFunction& c, int points);

struct QpeResult {
  int t = 0;
  double phi = 0.0;
  VecR probabilities;  // exact, over 2^t outcomes
  std::vector<int> counts;
  int best = 0;                  // nearest t-bit approximation of φ/2π
  double best_probability = 0.0;
};

QpeResult textbook_qpe(int t, double phi, int trials, std::uint64_t seed);

}  // namespace phasecoh
