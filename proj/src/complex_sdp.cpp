#include "phasecoh/complex_sdp.hpp"

#include <map>
#include <sstream>

namespace phasecoh {

SparseHerm sparse_from_dense(const MatC& h, double drop) {
  SparseHerm out;
  for (Eigen::Index q = 0; q < h.cols(); ++q)
    for (Eigen::Index p = 0; p <= q; ++p)
      if (std::abs(h(p, q)) > drop) out.push_back({static_cast<int>(p), static_cast<int>(q), h(p, q)});
  return out;
}

MatC dense_from_sparse(const SparseHerm& h, int n) {
  MatC out = MatC::Zero(n, n);
  for (const auto& e : h) {
    out(e.p, e.q) += e.h;
    if (e.p != e.q) out(e.q, e.p) += std::conj(e.h);
  }
  return out;
}

namespace {

// Hermitian H with Re Tr(H X) = Re Σ w_pq X_pq, i.e. H = (W + W†)/2 with W_qp = w_pq.
SparseHerm herm_of_functional(const std::vector<std::tuple<int, int, cd>>& w) {
  std::map<std::pair<int, int>, cd> acc;
  for (const auto& [p, q, v] : w) {
    // W_qp = v gives H_qp = v/2 and H_pq = conj(v)/2
    if (p == q)
      acc[{p, p}] += v.real();
    else if (q < p)
      acc[{q, p}] += v * 0.5;
    else
      acc[{p, q}] += std::conj(v) * 0.5;
  }
  SparseHerm out;
  for (const auto& [k, v] : acc)
    if (v != 0.0) out.push_back({k.first, k.second, v});
  return out;
}

}  // namespace

void ComplexSdp::add_functional(const std::vector<std::tuple<int, int, cd>>& w, cd value, bool with_imag) {
  ComplexRow re;
  re.h = herm_of_functional(w);
  re.rhs = value.real();
  rows.push_back(std::move(re));
  if (!with_imag) return;
  std::vector<std::tuple<int, int, cd>> wi;
  wi.reserve(w.size());
  for (const auto& [p, q, v] : w) wi.emplace_back(p, q, cd(0, -1) * v);
  ComplexRow im;
  im.h = herm_of_functional(wi);
  im.rhs = value.imag();
  rows.push_back(std::move(im));
}

void ComplexSdp::add_map_constraint(const std::function<MatC(const MatC&)>& map, const MatC& target) {
  const Eigen::Index no = target.rows();
  // functional per output entry (r ≤ s), keyed r*no+s
  std::vector<std::vector<std::tuple<int, int, cd>>> f(static_cast<size_t>(no * no));
  MatC e = MatC::Zero(n, n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      e(p, q) = 1.0;
      MatC out = map(e);
      e(p, q) = 0.0;
      require(out.rows() == no && out.cols() == no, "add_map_constraint: map output size mismatch",
              ErrorKind::DimensionMismatch);
      for (Eigen::Index s = 0; s < no; ++s)
        for (Eigen::Index r = 0; r <= s; ++r)
          if (out(r, s) != 0.0) f[r * no + s].emplace_back(p, q, out(r, s));
    }
  }
  for (Eigen::Index s = 0; s < no; ++s)
    for (Eigen::Index r = 0; r <= s; ++r) {
      const auto& w = f[r * no + s];
      cd t = target(r, s);
      if (w.empty() && t == 0.0) continue;
      add_functional(w, t, r != s);
    }
}

void ComplexSdp::set_objective(const MatC& c) {
  objective.h = sparse_from_dense((c + c.adjoint()) * 0.5);
  objective.scalars.clear();
}

std::vector<std::vector<std::pair<int, double>>> parameter_rows(const ComplexSdp& p) {
  // parameter layout: diag p -> p; off-diagonal (p<q) -> n + 2*k (real), n + 2*k + 1 (imag); scalars last
  const int n = p.n;
  auto off_index = [n](int a, int b) { return n + 2 * (b * (b - 1) / 2 + a); };
  const int scalar0 = n * n;
  std::vector<std::vector<std::pair<int, double>>> out;
  out.reserve(p.rows.size());
  for (const auto& row : p.rows) {
    std::vector<std::pair<int, double>> v;
    for (const auto& e : row.h) {
      if (e.p == e.q) {
        v.push_back({e.p, e.h.real()});
      } else {
        int k = off_index(e.p, e.q);
        if (e.h.real() != 0.0) v.push_back({k, 2 * e.h.real()});
        if (e.h.imag() != 0.0) v.push_back({k + 1, 2 * e.h.imag()});
      }
    }
    for (const auto& [k, a] : row.scalars) v.push_back({scalar0 + k, a});
    out.push_back(std::move(v));
  }
  return out;
}

ComplexSdp without_dependent_rows(const ComplexSdp& p, std::vector<int>* kept) {
  auto rows = parameter_rows(p);
  VecR rhs(static_cast<Eigen::Index>(p.rows.size()));
  for (size_t i = 0; i < p.rows.size(); ++i) rhs(i) = p.rows[i].rhs;
  bool bad = false;
  auto keep = independent_rows(rows, rhs, p.n * p.n + p.scalars, &bad);
  require(!bad, "constraint system is inconsistent (dependent rows with conflicting values)", ErrorKind::Solver);
  ComplexSdp out;
  out.n = p.n;
  out.scalars = p.scalars;
  out.objective = p.objective;
  out.sense = p.sense;
  for (int i : keep) out.rows.push_back(p.rows[i]);
  if (kept) *kept = keep;
  return out;
}

namespace {

void realify_into(const SparseHerm& h, int n, std::vector<BlockEntry>& out) {
  for (const auto& e : h) {
    double re = 0.5 * e.h.real(), im = 0.5 * e.h.imag();
    if (re != 0.0) {
      out.push_back({0, e.p, e.q, re});
      out.push_back({0, e.p + n, e.q + n, re});
    }
    if (e.p != e.q && im != 0.0) {
      out.push_back({0, e.p, e.q + n, -im});
      out.push_back({0, e.q, e.p + n, im});
    }
  }
}

}  // namespace

SdpProblem realified(const ComplexSdp& p) {
  require(p.n >= 1, "ComplexSdp: block size must be >= 1");
  SdpProblem r;
  r.sense = p.sense;
  r.blocks.push_back(2 * p.n);
  for (int k = 0; k < p.scalars; ++k) r.blocks.push_back(1);
  realify_into(p.objective.h, p.n, r.objective);
  for (const auto& [k, a] : p.objective.scalars) r.objective.push_back({1 + k, 0, 0, a});
  for (const auto& row : p.rows) {
    SdpConstraint c;
    realify_into(row.h, p.n, c.a);
    for (const auto& [k, a] : row.scalars) c.a.push_back({1 + k, 0, 0, a});
    c.rhs = row.rhs;
    r.constraints.push_back(std::move(c));
  }
  return r;
}

ComplexSdpResult solve_complex(const ComplexSdp& p, SdpOptions opt) {
  SdpSolution s = solve(realified(p), opt);
  ComplexSdpResult out;
  out.status = s.status;
  out.primal = s.primal;
  out.dual = s.dual;
  out.gap = s.gap;
  out.primal_residual = s.primal_residual;
  out.dual_residual = s.dual_residual;
  out.iterations = s.iterations;
  out.message = s.message;
  out.y = s.y;
  if (!s.x.empty()) {
    out.x = derealify(s.x[0]);
    out.z = derealify(s.z[0]) * 2.0;
    out.s = VecR(p.scalars);
    for (int k = 0; k < p.scalars; ++k) out.s(k) = s.x[1 + k](0, 0);
  }
  return out;
}

void require_solved(const ComplexSdpResult& r, double loose, const std::string& what) {
  if (r.status == SdpStatus::Optimal) return;
  bool close = r.status == SdpStatus::NumericalFailure && r.gap <= loose && r.primal_residual <= loose &&
               r.dual_residual <= loose;
  if (close) return;
  std::ostringstream os;
  os << what << ": solver returned " << to_string(r.status) << " (" << r.message << ")";
  fail(os.str(), ErrorKind::Solver);
}

}  // namespace phasecoh
