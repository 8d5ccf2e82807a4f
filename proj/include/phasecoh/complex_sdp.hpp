#pragma once

#include <functional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "phasecoh/sdp.hpp"

namespace phasecoh {

/// Upper-triangle entry of a sparse Hermitian matrix: H_pq = h, H_qp = conj(h), p ≤ q.
struct HermEntry {
  int p;
  int q;
  cd h;
};
using SparseHerm = std::vector<HermEntry>;

SparseHerm sparse_from_dense(const MatC& h, double drop = 0.0);
MatC dense_from_sparse(const SparseHerm& h, int n);

/// Re Tr(H X) + Σ a_k s_k = rhs.
struct ComplexRow {
  SparseHerm h;
  std::vector<std::pair<int, double>> scalars;
  double rhs = 0.0;
};

/// Linear objective over one complex Hermitian PSD block X (n×n) and
/// optional nonnegative scalars s, with real affine equalities.
struct ComplexSdp {
  int n = 0;
  int scalars = 0;
  ComplexRow objective;  // rhs ignored
  std::vector<ComplexRow> rows;
  Sense sense = Sense::Minimize;

  /// Constrains f(X) = value with f(X) = Σ w_pq X_pq (real and imaginary parts).
  void add_functional(const std::vector<std::tuple<int, int, cd>>& w, cd value, bool with_imag = true);
  /// Constrains L(X) = target entrywise, for a Hermiticity-preserving linear map L
  /// probed on elementary matrices |p⟩⟨q|.
  void add_map_constraint(const std::function<MatC(const MatC&)>& map, const MatC& target);
  /// Real linear objective Re Tr(C X).
  void set_objective(const MatC& c);
};

struct ComplexSdpResult {
  SdpStatus status = SdpStatus::NumericalFailure;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  MatC x;   // complex optimizer
  VecR s;   // scalar variables
  MatC z;   // dual slack C − Σ y_i H_i
  VecR y;   // multipliers per row
  std::string message;
};

/// Row vectors in the real parameter space of (Hermitian X, scalars).
std::vector<std::vector<std::pair<int, double>>> parameter_rows(const ComplexSdp& p);

/// Copy of `p` keeping a maximal independent subset of rows. Throws
/// ErrorKind::Solver when dropped rows contradict the kept ones.
ComplexSdp without_dependent_rows(const ComplexSdp& p, std::vector<int>* kept = nullptr);

SdpProblem realified(const ComplexSdp& p);
/// Solves via the real embedding; rows are assumed independent unless
/// opt.remove_dependent is set.
ComplexSdpResult solve_complex(const ComplexSdp& p, SdpOptions opt = {});

/// Throws ErrorKind::Solver unless the result is optimal, or a numerical
/// failure whose gap and residuals are all below `loose`.
void require_solved(const ComplexSdpResult& r, double loose, const std::string& what);

}  // namespace phasecoh
