#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phasecoh/tensor.hpp"

namespace phasecoh {

/// One entry of a symmetric block matrix; (i, j) and (j, i) both carry `v`.
struct BlockEntry {
  int block;
  int i;
  int j;
  double v;
};

struct SdpConstraint {
  std::vector<BlockEntry> a;
  double rhs = 0.0;
};

enum class Sense { Minimize, Maximize };

/// Linear objective over a product of real PSD blocks with affine equalities:
///   opt ⟨C, X⟩  s.t.  ⟨A_i, X⟩ = b_i,  X ⪰ 0.
/// The dual is  max/min b^T y  s.t.  C − Σ y_i A_i ⪰ 0 (for Minimize).
struct SdpProblem {
  std::vector<int> blocks;
  std::vector<BlockEntry> objective;
  std::vector<SdpConstraint> constraints;
  Sense sense = Sense::Minimize;

  void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };
const char* to_string(SdpStatus s);

struct SdpOptions {
  double gap_tol = 1e-8;    // |p − d| / (1 + |p|)
  double feas_tol = 1e-9;   // relative primal/dual residuals
  int max_iter = 150;
  bool remove_dependent = true;
  bool verbose = false;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  double primal = 0.0;  // objective in the problem's own sense
  double dual = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;  // ‖b − A(X)‖ / (1 + ‖b‖)
  double dual_residual = 0.0;    // ‖C − Z − A^T y‖ / (1 + ‖C‖)
  int iterations = 0;
  std::vector<MatR> x;  // primal optimizer per block
  std::vector<MatR> z;  // dual slack per block
  VecR y;               // one entry per constraint (zero for dropped dependent rows)
  std::string message;
};

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt = {});

/// Plain-text sparse dump (SDPA sparse layout) for cross-checking with other solvers.
void dump_sdpa(const SdpProblem& p, std::ostream& os);

/// [[Re H, −Im H], [Im H, Re H]].
MatR realify(const MatC& h);
/// Inverse of realify on its range, averaging the redundant copies.
MatC derealify(const MatR& x);

/// Indices of a maximal linearly independent subset of sparse rows
/// (each row a list of (column, value) pairs). Rows are kept in order of
/// first appearance. `rhs` consistency of the dropped rows is checked and
/// reported through `inconsistent`.
std::vector<int> independent_rows(const std::vector<std::vector<std::pair<int, double>>>& rows, const VecR& rhs,
                                  int ncols, bool* inconsistent, double tol = 1e-10);

}  // namespace phasecoh
