#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phasecoh/serialize.hpp"

namespace phasecoh {

/// {m, cost, matrix, c0, lambda_min, nu, shift}.
Json cost_matrix_report(const CostFunction& c, int m);

/// {cmin, advantage, dual, gap, weight, weight_bound, qubit_exact?, c0, lambda_min,
///  shift, status, consistent, failed_checks}. The consistency checks compare
/// primal against dual, bound against value, and the qubit formula when it applies.
Json cmin_report(const DensityMatrix& rho, const CostFunction& c, int m);

/// {value, dual, gap, m, single_copy, multicopy_dual}.
Json comb_report(const DensityMatrix& rho, const CostFunction& c, int d, int n);

enum class Ensemble { Ginibre, Pure, Isotropic };
Ensemble ensemble_from_name(const std::string& name);
std::string ensemble_name(Ensemble e);

struct SweepConfig {
  int d = 5;
  int m = 5;
  int count = 200;
  std::uint64_t seed = 1;
  int jobs = 1;
  Ensemble ensemble = Ensemble::Ginibre;
};

/// Row i uses a generator seeded with seed + i, so rows do not depend on `jobs`.
/// Rows whose SDPs fail are marked and reported through `log`.
std::vector<SweepRow> run_sweep(const CostFunction& c, const SweepConfig& cfg,
                                const std::function<void(const std::string&)>& log = {});
DensityMatrix sweep_state(const SweepConfig& cfg, int index);

/// Two panels: cmin against 1 − W with the weight-bound line, and cmin against C_R/(d−1).
std::string sweep_svg(const std::vector<SweepRow>& rows, const CostMatrix& y);

}  // namespace phasecoh
