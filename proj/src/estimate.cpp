#include "phasecoh/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

#include "phasecoh/complex_sdp.hpp"

namespace phasecoh {

SdpOptions single_copy_options() {
  SdpOptions o;
  o.gap_tol = 1e-9;
  o.feas_tol = 1e-10;
  o.max_iter = 200;
  return o;
}

SdpOptions comb_options() {
  SdpOptions o;
  o.gap_tol = 1e-8;
  o.feas_tol = 1e-9;
  o.max_iter = 200;
  return o;
}

namespace {

// Accepts optimal solutions and numerical failures that still meet `loose`.
void check_inputs(const DensityMatrix& rho, int m) {
  require(m >= 1, "number of outcomes m must be >= 1");
  require(rho.dim() >= 1, "empty state");
}

// Hermitian basis of D×D matrices: diagonal units, then real and imaginary off-diagonal pairs.
std::vector<MatC> hermitian_basis(int d, bool traceless = false) {
  std::vector<MatC> out;
  if (traceless) {
    for (int p = 0; p + 1 < d; ++p) {
      MatC e = MatC::Zero(d, d);
      e(p, p) = 1.0;
      e(d - 1, d - 1) = -1.0;
      out.push_back(e);
    }
  } else {
    for (int p = 0; p < d; ++p) {
      MatC e = MatC::Zero(d, d);
      e(p, p) = 1.0;
      out.push_back(e);
    }
  }
  for (int q = 0; q < d; ++q)
    for (int p = 0; p < q; ++p) {
      MatC e = MatC::Zero(d, d);
      e(p, q) = 1.0;
      e(q, p) = 1.0;
      out.push_back(e);
      e(p, q) = cd(0, 1);
      e(q, p) = cd(0, -1);
      out.push_back(e);
    }
  return out;
}

MatC kron(const MatC& a, const MatC& b) {
  MatC out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Choi optimizer cleanup: exact MIO zeros and exact trace preservation.
MatC polish_choi(MatC j, int din, int m) {
  auto zero_mio = [&](MatC& x) {
    for (int a = 0; a < din; ++a)
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v)
          if (u != v) x(a * m + u, a * m + v) = 0.0;
  };
  for (int it = 0; it < 3; ++it) {
    zero_mio(j);
    j = (j + j.adjoint()).eval() * 0.5;
    MatC t = MatC::Zero(din, din);
    for (int a = 0; a < din; ++a)
      for (int b = 0; b < din; ++b)
        for (int x = 0; x < m; ++x) t(a, b) += j(a * m + x, b * m + x);
    auto es = eig_hermitian(t, 1e-6);
    if (es.values.minCoeff() <= 0.0) break;
    MatC s = es.vectors * es.values.cwiseInverse().cwiseSqrt().asDiagonal() * es.vectors.adjoint();
    MatC sk = kron(s, MatC::Identity(m, m));
    j = sk * j * sk.adjoint();
  }
  zero_mio(j);
  return (j + j.adjoint()) * 0.5;
}

}  // namespace

EstimationResult cmin_single(const DensityMatrix& rho, const CostFunction& c, int m, const SdpOptions& opt) {
  check_inputs(rho, m);
  const int din = rho.dim();
  const int n = din * m;
  CostMatrix y = cost_matrix(c, m);

  ComplexSdp p;
  p.n = n;
  p.set_objective(kron(rho.mat().transpose(), y.matrix.mat()));
  // Tr_out J = 1_in
  p.add_map_constraint(
      [&](const MatC& e) {
        MatC t = MatC::Zero(din, din);
        for (int a = 0; a < din; ++a)
          for (int b = 0; b < din; ++b)
            for (int x = 0; x < m; ++x) t(a, b) += e(a * m + x, b * m + x);
        return t;
      },
      MatC::Identity(din, din));
  // input-diagonal, output-off-diagonal blocks vanish
  for (int a = 0; a < din; ++a)
    for (int v = 0; v < m; ++v)
      for (int u = 0; u < v; ++u) p.add_functional({{a * m + u, a * m + v, 1.0}}, 0.0);

  auto res = solve_complex(p, opt);
  require_solved(res, 1e-6, "cmin_single");

  EstimationResult out;
  out.value = res.primal;
  out.dual_value = res.dual;
  out.gap = res.gap;
  out.shift = y.shift;
  out.status = res.status;
  out.certificate = res.y;
  out.message = res.message;
  SystemDims in({rho.label()}, {din});
  SystemDims od({rho.label() == "out" ? "out'" : "out"}, {m});
  out.optimizer_choi = ChoiMatrix(in, od, polish_choi(res.x, din, m));
  return out;
}

EstimationResult cmin_dual(const DensityMatrix& rho, const CostFunction& c, int m, const SdpOptions& opt) {
  check_inputs(rho, m);
  const int din = rho.dim();
  const int n = din * m;
  CostMatrix y = cost_matrix(c, m);
  const MatC cmat = kron(rho.mat().transpose(), y.matrix.mat());

  // Rows are the LMI directions: B-basis ⊗ 1 (weight Tr E) and the entry
  // matrices in the range of Δ_0 − Δ_{0,out} (weight 0).
  ComplexSdp p;
  p.n = n;
  p.set_objective(cmat);
  std::vector<MatC> dense;
  for (const auto& e : hermitian_basis(din)) {
    MatC f = kron(e, MatC::Identity(m, m));
    p.rows.push_back({sparse_from_dense(f), {}, e.trace().real()});
    dense.push_back(f);
  }
  for (int a = 0; a < din; ++a)
    for (int v = 0; v < m; ++v)
      for (int u = 0; u < v; ++u)
        for (cd h : {cd(1, 0), cd(0, 1)}) {
          int r = a * m + u, s = a * m + v;
          p.rows.push_back({SparseHerm{{r, s, h}}, {}, 0.0});
          dense.push_back(dense_from_sparse(p.rows.back().h, n));
        }

  auto res = solve_complex(p, opt);
  require_solved(res, 1e-6, "cmin_dual");

  // Rebuild the LMI slack from the multipliers and repair any small negativity
  // by shifting B, so the reported value is a certified lower bound.
  MatC z = cmat;
  double value = 0.0;
  for (size_t i = 0; i < p.rows.size(); ++i) {
    z -= res.y(static_cast<Eigen::Index>(i)) * dense[i];
    value += res.y(static_cast<Eigen::Index>(i)) * p.rows[i].rhs;
  }
  double lmin = min_eigenvalue((z + z.adjoint()) * 0.5);
  if (lmin < 0.0) value += din * lmin;

  EstimationResult out;
  out.value = value;
  out.dual_value = res.primal;
  out.gap = std::abs(res.primal - value) / (1.0 + std::abs(res.primal));
  out.shift = y.shift;
  out.status = res.status;
  out.certificate = res.y;
  out.message = res.message;
  return out;
}

double advantage(const DensityMatrix& rho, const CostFunction& c, int m) {
  return c_zero(c) - cmin_single(rho, c, m).value;
}

double cmin_unconstrained(const CostFunction& c, int m) {
  require(m >= 1, "number of outcomes m must be >= 1");
  return cost_matrix(c, m).lambda_min;
}

double weight_bound(double weight, const CostMatrix& y) {
  return y.lambda_min + (y.c0 - y.lambda_min) * (1.0 - weight);
}

double weight_bound(const DensityMatrix& rho, const CostFunction& c, int m) {
  require(m >= 1, "number of outcomes m must be >= 1");
  return weight_bound(weight_of_coherence(rho), cost_matrix(c, m));
}

double qubit_exact(const DensityMatrix& rho, const CostFunction& c) {
  require(rho.dim() == 2, "qubit_exact needs a qubit state", ErrorKind::DimensionMismatch);
  CostMatrix y = cost_matrix(c, 2);
  // for qubits the robustness of coherence equals the l1 norm of coherence
  double cr = l1_coherence(rho);
  return y.c0 - (y.c0 - y.lambda_min) * cr;
}

int reduce_copies(int d, int n) {
  require(d >= 2, "d must be >= 2");
  require(n >= 1, "n must be >= 1");
  return (d - 1) * n + 1;
}

int digit_sum(int value, int d) {
  int s = 0;
  for (; value > 0; value /= d) s += value % d;
  return s;
}

XMatrix x_matrix(const CostFunction& c, int d, int n) {
  require(d >= 2 && n >= 1, "x_matrix: need d >= 2 and n >= 1");
  int dn = 1;
  for (int k = 0; k < n; ++k) dn *= d;
  require(dn <= 16, "x_matrix: d^n exceeds 16", ErrorKind::InvalidArgument);
  Labels labels;
  std::vector<int> dims;
  for (int k = 1; k <= 2 * n; ++k) {
    labels.push_back(std::to_string(k));
    dims.push_back(d);
  }
  SystemDims sd(labels, dims);
  // |nn⟩⟨mm| in natural order: digit n_k sits on systems 2k−1 and 2k
  auto doubled = [&](int v) {
    std::vector<int> dig(2 * n);
    for (int k = n - 1; k >= 0; --k, v /= d) dig[2 * k] = dig[2 * k + 1] = v % d;
    return sd.flat(dig);
  };
  MatC x = MatC::Zero(sd.total(), sd.total());
  for (int a = 0; a < dn; ++a)
    for (int b = 0; b < dn; ++b) x(doubled(a), doubled(b)) = c.coefficient(digit_sum(b, d) - digit_sum(a, d));
  return {d, n, CMatrix(sd, x)};
}

namespace {

struct CombLayout {
  int d0, d, n, m, total;
  SystemDims sys;                 // "0".."2n"
  std::vector<int> odd_weight;    // digit sum over odd systems, per flat index
  std::vector<std::vector<int>> digits;
};

CombLayout comb_layout(int d0, int d, int n) {
  CombLayout l;
  l.d0 = d0;
  l.d = d;
  l.n = n;
  l.m = reduce_copies(d, n);
  Labels labels{"0"};
  std::vector<int> dims{d0};
  for (int k = 1; k <= 2 * n; ++k) {
    labels.push_back(std::to_string(k));
    dims.push_back(d);
  }
  l.sys = SystemDims(labels, dims);
  l.total = l.sys.total();
  require(l.total <= kCombDimCap, "comb problem exceeds the size cap dim(rho)*d^(2n) <= 64");
  for (int i = 0; i < l.total; ++i) {
    auto dig = l.sys.digits(i);
    int w = 0;
    for (int k = 1; k < static_cast<int>(dig.size()); k += 2) w += dig[k];
    l.odd_weight.push_back(w);
    l.digits.push_back(std::move(dig));
  }
  return l;
}

// Σ_x Ũ_x† K Ũ_x = M · (entries with matching odd digit sums).
MatC covariant_sum(const CombLayout& l, const MatC& k) {
  MatC out = MatC::Zero(k.rows(), k.cols());
  for (int i = 0; i < l.total; ++i)
    for (int j = 0; j < l.total; ++j)
      if (l.odd_weight[i] == l.odd_weight[j]) out(i, j) = static_cast<double>(l.m) * k(i, j);
  return out;
}

// Entries (a, b), a < b, forced to zero by the dephasing constraints for some j < n.
std::vector<std::pair<int, int>> coherence_zero_entries(const CombLayout& l) {
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < l.total; ++b)
    for (int a = 0; a < b; ++a) {
      const auto& da = l.digits[a];
      const auto& db = l.digits[b];
      bool hit = false;
      for (int j = 0; j < l.n && !hit; ++j) {
        bool inputs_equal = true, outputs_equal = true;
        for (int s = 0; s <= 2 * j + 1; ++s) {
          bool eq = da[s] == db[s];
          if (s % 2 == 0) inputs_equal = inputs_equal && eq;
          else outputs_equal = outputs_equal && eq;
        }
        hit = inputs_equal && !outputs_equal;
      }
      if (hit) out.emplace_back(a, b);
    }
  return out;
}

// Hierarchy residuals of a comb on "0".."2n" with teeth (2j → 2j+1) and a
// final input 2n without output.
std::vector<CMatrix> comb_residuals(const CombLayout& l, const CMatrix& s) {
  std::vector<CMatrix> out;
  auto label = [](int k) { return std::to_string(k); };
  // top level: S = 1_{2n} ⊗ R_n
  CMatrix r = partial_trace(s, {label(2 * l.n)}) * cd(1.0 / l.d);
  out.push_back(s - extend(r, s.dims()));
  for (int j = l.n - 1; j >= 1; --j) {
    CMatrix t = partial_trace(r, {label(2 * j + 1)});
    CMatrix next = partial_trace(t, {label(2 * j)}) * cd(1.0 / l.d);
    out.push_back(t - extend(next, t.dims()));
    r = next;
  }
  CMatrix t = partial_trace(r, {label(1)});
  out.push_back(t - CMatrix::identity(t.dims()));
  return out;
}

struct CombStructure {
  ComplexSdp constraints;  // objective unset
};

const CombStructure& comb_structure(int d0, int d, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, CombStructure> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(d0, d, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  CombLayout l = comb_layout(d0, d, n);
  ComplexSdp p;
  p.n = l.total;
  const CMatrix zero = CMatrix::zero(l.sys);
  auto level_count = static_cast<size_t>(comb_residuals(l, zero).size());
  for (size_t lev = 0; lev < level_count; ++lev) {
    auto map = [&l, lev](const MatC& e) {
      CMatrix s(l.sys, covariant_sum(l, e));
      auto res = comb_residuals(l, s);
      MatC out = res[lev].mat();
      // the constant part (−1 on the last level) belongs to the target
      if (lev + 1 == res.size()) out += MatC::Identity(out.rows(), out.cols());
      return out;
    };
    auto last = comb_residuals(l, zero)[lev];
    MatC target = MatC::Zero(last.rows(), last.rows());
    if (lev + 1 == level_count) target.setIdentity();
    p.add_map_constraint(map, target);
  }
  for (auto [a, b] : coherence_zero_entries(l)) p.add_functional({{a, b, 1.0}}, 0.0);
  CombStructure cs{without_dependent_rows(p)};
  return cache.emplace(key, std::move(cs)).first->second;
}

MatC comb_objective(const CombLayout& l, const DensityMatrix& rho, const CostFunction& c) {
  XMatrix x = x_matrix(c, l.d, l.n);
  return kron(rho.mat().transpose(), x.mat.mat()) * static_cast<double>(l.m);
}

}  // namespace

EstimationResult relaxed_comb_sdp(const DensityMatrix& rho, const CostFunction& c, int d, int n,
                                  const SdpOptions& opt) {
  CombLayout l = comb_layout(rho.dim(), d, n);
  ComplexSdp p = comb_structure(rho.dim(), d, n).constraints;
  p.set_objective(comb_objective(l, rho, c));
  SdpOptions o = opt;
  o.remove_dependent = false;
  auto res = solve_complex(p, o);
  require_solved(res, 1e-5, "relaxed_comb_sdp");
  EstimationResult out;
  out.value = res.primal;
  out.dual_value = res.dual;
  out.gap = res.gap;
  out.shift = c.shift();
  out.status = res.status;
  out.certificate = res.y;
  out.message = res.message;
  return out;
}

EstimationResult multicopy_dual_numeric(const DensityMatrix& rho, const CostFunction& c, int d, int n,
                                        const SdpOptions& opt) {
  CombLayout l = comb_layout(rho.dim(), d, n);
  const MatC cmat = comb_objective(l, rho, c);
  double dn = std::pow(static_cast<double>(d), n);

  // B_{n+1} = B_1 ⊗ 1/d^n + Σ_j B̃_{j+1} ⊗ 1/d^{n−j}, with B̃_{j+1} on 0..2j traceless on 2j,
  // solves the nesting constraints; each basis direction enters the LMI through
  // the covariant sum.
  ComplexSdp p;
  p.n = l.total;
  p.set_objective(cmat);
  std::vector<MatC> dense;
  auto add_direction = [&](const MatC& b_full, double weight) {
    MatC f = covariant_sum(l, b_full);
    if (max_abs(f) < 1e-14) return;
    p.rows.push_back({sparse_from_dense(f, 1e-15), {}, weight});
    dense.push_back(f);
  };
  for (const auto& e : hermitian_basis(l.d0)) {
    int rest = l.total / l.d0;
    add_direction(kron(e, MatC::Identity(rest, rest)) / dn, e.trace().real());
  }
  int prefix = l.d0;  // dimension of systems 0..2j−1
  for (int j = 1; j <= n; ++j) {
    prefix *= d;  // now covers 0..2j−1
    int rest = l.total / (prefix * d);
    double scale = std::pow(static_cast<double>(d), n - j);
    auto left = hermitian_basis(prefix);
    auto right = hermitian_basis(d, true);
    for (const auto& a : left)
      for (const auto& b : right) add_direction(kron(kron(a, b), MatC::Identity(rest, rest)) / scale, 0.0);
    prefix *= d;  // include system 2j
  }
  for (auto [a, b] : coherence_zero_entries(l))
    for (cd h : {cd(1, 0), cd(0, 1)}) {
      p.rows.push_back({SparseHerm{{a, b, h}}, {}, 0.0});
      dense.push_back(dense_from_sparse(p.rows.back().h, l.total));
    }

  std::vector<int> kept;
  ComplexSdp reduced = without_dependent_rows(p, &kept);
  SdpOptions o = opt;
  o.remove_dependent = false;
  auto res = solve_complex(reduced, o);
  require_solved(res, 1e-5, "multicopy_dual_numeric");

  MatC z = cmat;
  double value = 0.0;
  for (size_t i = 0; i < kept.size(); ++i) {
    double yi = res.y(static_cast<Eigen::Index>(i));
    z -= yi * dense[kept[i]];
    value += yi * p.rows[kept[i]].rhs;
  }
  double lmin = min_eigenvalue((z + z.adjoint()) * 0.5);
  // shifting B_1 by t·1 moves the slack by −M t / d^n
  if (lmin < 0.0) value += l.d0 * lmin * dn / l.m;

  EstimationResult out;
  out.value = value;
  out.dual_value = res.primal;
  out.gap = std::abs(res.primal - value) / (1.0 + std::abs(res.primal));
  out.shift = c.shift();
  out.status = res.status;
  out.certificate = res.y;
  out.message = res.message;
  return out;
}

}  // namespace phasecoh
