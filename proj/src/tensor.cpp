#include "phasecoh/tensor.hpp"

#include <algorithm>
#include <set>

namespace phasecoh {

SystemDims::SystemDims(Labels labels, std::vector<int> dims) : labels_(std::move(labels)), dims_(std::move(dims)) {
  require(labels_.size() == dims_.size(), "SystemDims: labels and dims differ in length");
  std::set<std::string> seen;
  for (size_t k = 0; k < labels_.size(); ++k) {
    require(dims_[k] >= 1, "SystemDims: dimension must be >= 1");
    require(seen.insert(labels_[k]).second, "SystemDims: duplicate label '" + labels_[k] + "'");
    total_ *= dims_[k];
  }
}

bool SystemDims::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int SystemDims::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) fail(ErrorKind::UnknownLabel, "unknown system label '" + label + "'");
  return static_cast<int>(it - labels_.begin());
}

int SystemDims::dim(const std::string& label) const { return dims_[position(label)]; }

int SystemDims::dim_of(const Labels& subset) const {
  int d = 1;
  for (const auto& l : subset) d *= dim(l);
  return d;
}

SystemDims SystemDims::select(const Labels& subset) const {
  std::vector<int> d;
  for (const auto& l : subset) d.push_back(dim(l));
  return SystemDims(subset, d);
}

SystemDims SystemDims::without(const Labels& subset) const {
  for (const auto& l : subset) position(l);
  Labels keep;
  std::vector<int> d;
  for (int k = 0; k < size(); ++k) {
    if (std::find(subset.begin(), subset.end(), labels_[k]) == subset.end()) {
      keep.push_back(labels_[k]);
      d.push_back(dims_[k]);
    }
  }
  return SystemDims(keep, d);
}

SystemDims SystemDims::concat(const SystemDims& other) const {
  Labels l = labels_;
  std::vector<int> d = dims_;
  l.insert(l.end(), other.labels_.begin(), other.labels_.end());
  d.insert(d.end(), other.dims_.begin(), other.dims_.end());
  return SystemDims(l, d);
}

std::vector<int> SystemDims::digits(int index) const {
  std::vector<int> out(dims_.size());
  for (int k = size() - 1; k >= 0; --k) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

int SystemDims::flat(const std::vector<int>& digits) const {
  int idx = 0;
  for (int k = 0; k < size(); ++k) idx = idx * dims_[k] + digits[k];
  return idx;
}

CMatrix::CMatrix(SystemDims dims, MatC m) : dims_(std::move(dims)), m_(std::move(m)) {
  require(m_.rows() == dims_.total() && m_.cols() == dims_.total(),
          "CMatrix: matrix size does not match system dimensions", ErrorKind::DimensionMismatch);
}

CMatrix::CMatrix(const std::string& label, MatC m) : m_(std::move(m)) {
  dims_ = SystemDims({label}, {static_cast<int>(m_.rows())});
  require(m_.rows() == m_.cols(), "CMatrix: matrix must be square", ErrorKind::DimensionMismatch);
}

CMatrix CMatrix::identity(const SystemDims& dims) { return CMatrix(dims, MatC::Identity(dims.total(), dims.total())); }

CMatrix CMatrix::zero(const SystemDims& dims) { return CMatrix(dims, MatC::Zero(dims.total(), dims.total())); }

CMatrix CMatrix::projector(const std::string& label, const VecC& ket) { return CMatrix(label, ket * ket.adjoint()); }

bool CMatrix::is_hermitian(double tol) const { return max_abs(m_ - m_.adjoint()) <= tol; }

CMatrix CMatrix::relabel(const Labels& labels) const { return CMatrix(SystemDims(labels, dims_.dims()), m_); }

CMatrix CMatrix::operator+(const CMatrix& o) const {
  require(dims_ == o.dims_, "CMatrix +: system mismatch", ErrorKind::DimensionMismatch);
  return CMatrix(dims_, m_ + o.m_);
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  require(dims_ == o.dims_, "CMatrix -: system mismatch", ErrorKind::DimensionMismatch);
  return CMatrix(dims_, m_ - o.m_);
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  require(dims_ == o.dims_, "CMatrix *: system mismatch", ErrorKind::DimensionMismatch);
  return CMatrix(dims_, m_ * o.m_);
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  SystemDims d = a.dims().concat(b.dims());  // throws on label collision
  const MatC& x = a.mat();
  const MatC& y = b.mat();
  MatC k(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      k.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return CMatrix(d, k);
}

namespace {

// For every flat index of `dims`, its flat index within the `keep` and `rest` subsystems.
struct Split {
  std::vector<int> keep, rest;
};

Split split_indices(const SystemDims& dims, const std::vector<bool>& in_rest) {
  Split s;
  int n = dims.total();
  s.keep.resize(n);
  s.rest.resize(n);
  for (int idx = 0; idx < n; ++idx) {
    auto dg = dims.digits(idx);
    int k = 0, r = 0;
    for (int p = 0; p < dims.size(); ++p) {
      if (in_rest[p])
        r = r * dims.dims()[p] + dg[p];
      else
        k = k * dims.dims()[p] + dg[p];
    }
    s.keep[idx] = k;
    s.rest[idx] = r;
  }
  return s;
}

std::vector<bool> mask_of(const SystemDims& dims, const Labels& over) {
  std::vector<bool> mask(dims.size(), false);
  for (const auto& l : over) mask[dims.position(l)] = true;
  return mask;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const Labels& over) {
  const SystemDims& dims = m.dims();
  auto mask = mask_of(dims, over);
  SystemDims kept = dims.without(over);
  Split s = split_indices(dims, mask);
  int n = dims.total();
  MatC out = MatC::Zero(kept.total(), kept.total());
  const MatC& a = m.mat();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (s.rest[i] == s.rest[j]) out(s.keep[i], s.keep[j]) += a(i, j);
  return CMatrix(kept, out);
}

CMatrix partial_transpose(const CMatrix& m, const Labels& over) {
  const SystemDims& dims = m.dims();
  auto mask = mask_of(dims, over);
  int n = dims.total();
  std::vector<std::vector<int>> dg(n);
  for (int i = 0; i < n; ++i) dg[i] = dims.digits(i);
  MatC out(n, n);
  const MatC& a = m.mat();
  std::vector<int> r(dims.size()), c(dims.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < dims.size(); ++p) {
        r[p] = mask[p] ? dg[j][p] : dg[i][p];
        c[p] = mask[p] ? dg[i][p] : dg[j][p];
      }
      out(dims.flat(r), dims.flat(c)) = a(i, j);
    }
  }
  return CMatrix(dims, out);
}

CMatrix dephase(const CMatrix& m, const Labels& over) {
  const SystemDims& dims = m.dims();
  auto mask = mask_of(dims, over);
  Split s = split_indices(dims, mask);
  MatC out = m.mat();
  int n = dims.total();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (s.rest[i] != s.rest[j]) out(i, j) = 0.0;
  return CMatrix(dims, out);
}

CMatrix reorder(const CMatrix& m, const Labels& order) {
  const SystemDims& dims = m.dims();
  require(static_cast<int>(order.size()) == dims.size(), "reorder: label count mismatch");
  if (order == dims.labels()) return m;
  SystemDims target = dims.select(order);
  std::vector<int> perm(order.size());
  for (size_t k = 0; k < order.size(); ++k) perm[k] = dims.position(order[k]);
  int n = dims.total();
  std::vector<int> map(n);
  std::vector<int> t(order.size());
  for (int i = 0; i < n; ++i) {
    auto dg = dims.digits(i);
    for (size_t k = 0; k < order.size(); ++k) t[k] = dg[perm[k]];
    map[i] = target.flat(t);
  }
  MatC out(n, n);
  const MatC& a = m.mat();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) out(map[i], map[j]) = a(i, j);
  return CMatrix(target, out);
}

CMatrix extend(const CMatrix& m, const SystemDims& target) {
  SystemDims extra = target.without(m.labels());
  CMatrix full = extra.size() == 0 ? m : tensor(m, CMatrix::identity(extra));
  return reorder(full, target.labels());
}

EigenSystem eig_hermitian(const MatC& m, double herm_tol) {
  require(m.rows() == m.cols(), "eig_hermitian: matrix not square", ErrorKind::DimensionMismatch);
  double scale = std::max(1.0, max_abs(m));
  require(max_abs(m - m.adjoint()) <= herm_tol * scale, "eig_hermitian: matrix is not Hermitian");
  MatC h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<MatC> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

EigenSystem eig_hermitian(const CMatrix& m, double herm_tol) { return eig_hermitian(m.mat(), herm_tol); }

double min_eigenvalue(const MatC& m) {
  MatC h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<MatC> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs(const MatC& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

ChoiMatrix::ChoiMatrix(SystemDims in, SystemDims out, MatC m)
    : in_(std::move(in)), out_(std::move(out)), mat_(in_.concat(out_), std::move(m)) {}

ChoiMatrix::ChoiMatrix(SystemDims in, SystemDims out, const CMatrix& m) : in_(std::move(in)), out_(std::move(out)) {
  SystemDims all = in_.concat(out_);
  require(m.dims().size() == all.size(), "ChoiMatrix: systems do not match in ∪ out", ErrorKind::DimensionMismatch);
  mat_ = reorder(m, all.labels());
  require(mat_.dims() == all, "ChoiMatrix: dimensions do not match", ErrorKind::DimensionMismatch);
}

bool ChoiMatrix::is_cptp(double tol) const {
  if (!mat_.is_hermitian(tol)) return false;
  if (min_eigenvalue(mat_.mat()) < -tol) return false;
  CMatrix t = partial_trace(mat_, out_.labels());
  return max_abs(t.mat() - MatC::Identity(in_.total(), in_.total())) <= tol;
}

CMatrix apply_choi(const ChoiMatrix& j, const CMatrix& rho) {
  require(rho.dims().size() == j.in().size(), "apply_choi: input systems mismatch", ErrorKind::DimensionMismatch);
  CMatrix r = reorder(rho, j.in().labels());
  require(r.dims() == j.in(), "apply_choi: input dimensions mismatch", ErrorKind::DimensionMismatch);
  // Tr_in[(ρ^T ⊗ 1) J]: block (a,b) of J over the input index contributes ρ_{ab}·J_{ab}.
  int din = j.in().total(), dout = j.out().total();
  const MatC& jm = j.mat().mat();
  MatC out = MatC::Zero(dout, dout);
  for (int a = 0; a < din; ++a)
    for (int b = 0; b < din; ++b) {
      cd w = r.mat()(a, b);
      if (w != 0.0) out += w * jm.block(a * dout, b * dout, dout, dout);
    }
  return CMatrix(j.out(), out);
}

}  // namespace phasecoh
