#pragma once

#include <optional>
#include <string>

#include "phasecoh/channels.hpp"
#include "phasecoh/cost.hpp"
#include "phasecoh/sdp.hpp"
#include "phasecoh/states.hpp"

namespace phasecoh {

struct EstimationResult {
  double value = 0.0;       // optimum of the shifted cost
  double dual_value = 0.0;  // value of the opposite side of the SDP pair
  double gap = 0.0;
  double shift = 0.0;       // value − shift is the optimum for the unshifted cost
  SdpStatus status = SdpStatus::NumericalFailure;
  std::optional<ChoiMatrix> optimizer_choi;
  VecR certificate;
  std::string message;
};

/// Default solver settings for the single-copy problems.
SdpOptions single_copy_options();
/// Looser settings for the comb problems.
SdpOptions comb_options();

/// min over MIO channels of Tr[Y^(m) M(ρ)] via the Choi-matrix SDP.
EstimationResult cmin_single(const DensityMatrix& rho, const CostFunction& c, int m,
                             const SdpOptions& opt = single_copy_options());
/// Same optimum read off the dual LMI  ρ^T⊗Y − B⊗1 − (Δ_0 − Δ_{0,out})(A) ⪰ 0.
EstimationResult cmin_dual(const DensityMatrix& rho, const CostFunction& c, int m,
                           const SdpOptions& opt = single_copy_options());
double advantage(const DensityMatrix& rho, const CostFunction& c, int m);
double cmin_unconstrained(const CostFunction& c, int m);
double weight_bound(const DensityMatrix& rho, const CostFunction& c, int m);
double weight_bound(double weight, const CostMatrix& y);
double qubit_exact(const DensityMatrix& rho, const CostFunction& c);
int reduce_copies(int d, int n);
int digit_sum(int value, int d);

struct XMatrix {
  int d = 0;
  int n = 0;
  CMatrix mat;  // systems "1".."2n"
};
XMatrix x_matrix(const CostFunction& c, int d, int n);

/// Largest total dimension dim(ρ)·d^{2n} accepted by the comb problems.
constexpr int kCombDimCap = 64;

EstimationResult relaxed_comb_sdp(const DensityMatrix& rho, const CostFunction& c, int d, int n,
                                  const SdpOptions& opt = comb_options());
EstimationResult multicopy_dual_numeric(const DensityMatrix& rho, const CostFunction& c, int d, int n,
                                        const SdpOptions& opt = comb_options());

}  // namespace phasecoh
