#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phasecoh/error.hpp"

namespace phasecoh {

using cd = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;
using MatR = Eigen::MatrixXd;
using VecR = Eigen::VectorXd;
using Labels = std::vector<std::string>;

/// Ordered list of labeled subsystems. The first label is the most
/// significant digit of the tensor-product index.
class SystemDims {
 public:
  SystemDims() = default;
  SystemDims(Labels labels, std::vector<int> dims);

  const Labels& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  int size() const { return static_cast<int>(labels_.size()); }
  int total() const { return total_; }
  bool contains(const std::string& label) const;
  int position(const std::string& label) const;  // throws UnknownLabel
  int dim(const std::string& label) const;
  int dim_of(const Labels& subset) const;

  SystemDims select(const Labels& subset) const;  // in the given order
  SystemDims without(const Labels& subset) const;
  SystemDims concat(const SystemDims& other) const;

  /// Digits of a flat index, one per system, most significant first.
  std::vector<int> digits(int index) const;
  int flat(const std::vector<int>& digits) const;

  bool operator==(const SystemDims& o) const { return labels_ == o.labels_ && dims_ == o.dims_; }

 private:
  Labels labels_;
  std::vector<int> dims_;
  int total_ = 1;
};

/// Dense complex operator over a labeled multipartite system.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(SystemDims dims, MatC m);
  /// Single-system convenience constructor.
  CMatrix(const std::string& label, MatC m);

  static CMatrix identity(const SystemDims& dims);
  static CMatrix zero(const SystemDims& dims);
  static CMatrix projector(const std::string& label, const VecC& ket);

  const SystemDims& dims() const { return dims_; }
  const Labels& labels() const { return dims_.labels(); }
  const MatC& mat() const { return m_; }
  int rows() const { return static_cast<int>(m_.rows()); }
  cd trace() const { return m_.trace(); }

  bool is_hermitian(double tol = 1e-12) const;
  /// Same matrix with systems renamed position-wise.
  CMatrix relabel(const Labels& labels) const;
  CMatrix adjoint() const { return CMatrix(dims_, m_.adjoint()); }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;  // same dims required
  CMatrix operator*(cd s) const { return CMatrix(dims_, m_ * s); }

 private:
  SystemDims dims_;
  MatC m_;
};

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CMatrix partial_trace(const CMatrix& m, const Labels& over);
CMatrix partial_transpose(const CMatrix& m, const Labels& over);
CMatrix dephase(const CMatrix& m, const Labels& over);
/// Permute subsystems into `order` (a permutation of m's labels).
CMatrix reorder(const CMatrix& m, const Labels& order);
/// Embed `m` into a larger system: m ⊗ identity on the extra systems, then reorder to `target`.
CMatrix extend(const CMatrix& m, const SystemDims& target);

struct EigenSystem {
  VecR values;   // ascending
  MatC vectors;  // columns
};
EigenSystem eig_hermitian(const MatC& m, double herm_tol = 1e-12);
EigenSystem eig_hermitian(const CMatrix& m, double herm_tol = 1e-12);
double min_eigenvalue(const MatC& m);
/// Largest entrywise modulus.
double max_abs(const MatC& m);

/// Choi matrix J = Σ |n⟩⟨m| ⊗ N(|n⟩⟨m|), input systems first.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;
  ChoiMatrix(SystemDims in, SystemDims out, MatC m);
  ChoiMatrix(SystemDims in, SystemDims out, const CMatrix& m);  // reorders to in ∪ out

  const SystemDims& in() const { return in_; }
  const SystemDims& out() const { return out_; }
  const CMatrix& mat() const { return mat_; }

  bool is_cptp(double tol = 1e-9) const;

 private:
  SystemDims in_, out_;
  CMatrix mat_;
};

/// N(ρ) = Tr_in[(ρ^T ⊗ 1) J]. `rho` must be labeled by the input systems.
CMatrix apply_choi(const ChoiMatrix& j, const CMatrix& rho);

}  // namespace phasecoh
