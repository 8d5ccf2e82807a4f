#include "phasecoh/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace phasecoh {

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "optimal";
    case SdpStatus::Infeasible:
      return "infeasible";
    case SdpStatus::Unbounded:
      return "unbounded";
    case SdpStatus::NumericalFailure:
      return "numerical-failure";
  }
  return "?";
}

void SdpProblem::validate() const {
  require(!blocks.empty(), "SdpProblem: no blocks");
  for (int b : blocks) require(b >= 1, "SdpProblem: block size must be >= 1");
  auto check = [&](const BlockEntry& e) {
    require(e.block >= 0 && e.block < static_cast<int>(blocks.size()), "SdpProblem: entry block out of range");
    require(e.i >= 0 && e.j >= 0 && e.i < blocks[e.block] && e.j < blocks[e.block],
            "SdpProblem: entry index out of range");
    require(std::isfinite(e.v), "SdpProblem: non-finite coefficient");
  };
  for (const auto& e : objective) check(e);
  for (const auto& c : constraints) {
    for (const auto& e : c.a) check(e);
    require(std::isfinite(c.rhs), "SdpProblem: non-finite right-hand side");
  }
}

MatR realify(const MatC& h) {
  require(h.rows() == h.cols(), "realify: matrix not square", ErrorKind::DimensionMismatch);
  require(max_abs(h - h.adjoint()) <= 1e-12 * std::max(1.0, max_abs(h)), "realify: matrix is not Hermitian");
  Eigen::Index n = h.rows();
  MatR r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = h.real();
  r.topRightCorner(n, n) = -h.imag();
  r.bottomLeftCorner(n, n) = h.imag();
  r.bottomRightCorner(n, n) = h.real();
  return r;
}

MatC derealify(const MatR& x) {
  require(x.rows() == x.cols() && x.rows() % 2 == 0, "derealify: need an even square matrix",
          ErrorKind::DimensionMismatch);
  Eigen::Index n = x.rows() / 2;
  MatR re = (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n)) * 0.5;
  MatR im = (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n)) * 0.5;
  MatC out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

std::vector<int> independent_rows(const std::vector<std::vector<std::pair<int, double>>>& rows, const VecR& rhs,
                                  int ncols, bool* inconsistent, double tol) {
  const int m = static_cast<int>(rows.size());
  if (inconsistent) *inconsistent = false;
  std::vector<char> keep(m, 0);
  // Normalized copies.
  std::vector<std::vector<std::pair<int, double>>> r(m);
  VecR b(m);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (const auto& [c, v] : rows[i]) s = std::max(s, std::abs(v));
    b(i) = rhs(i);
    if (s == 0.0) continue;
    for (const auto& [c, v] : rows[i])
      if (std::abs(v) > tol * s) r[i].push_back({c, v / s});
    b(i) /= s;
  }
  // Rows touching a single column fix that column's value.
  std::vector<double> fixed(ncols, std::numeric_limits<double>::quiet_NaN());
  auto merged = [](const std::vector<std::pair<int, double>>& row) {
    std::vector<std::pair<int, double>> out(row);
    std::sort(out.begin(), out.end());
    std::vector<std::pair<int, double>> acc;
    for (const auto& e : out) {
      if (!acc.empty() && acc.back().first == e.first)
        acc.back().second += e.second;
      else
        acc.push_back(e);
    }
    return acc;
  };
  for (int i = 0; i < m; ++i) r[i] = merged(r[i]);
  for (int i = 0; i < m; ++i) {
    if (r[i].size() != 1) continue;
    auto [c, v] = r[i][0];
    double val = b(i) / v;
    if (std::isnan(fixed[c])) {
      fixed[c] = val;
      keep[i] = 1;
    } else if (std::abs(fixed[c] - val) > 1e-8 * (1 + std::abs(val))) {
      if (inconsistent) *inconsistent = true;
    }
  }
  // Remaining rows with fixed columns substituted.
  std::vector<int> rest;
  std::vector<int> colmap(ncols, -1);
  int nc = 0;
  std::vector<std::vector<std::pair<int, double>>> red(m);
  VecR rb = b;
  for (int i = 0; i < m; ++i) {
    if (r[i].size() == 1 || r[i].empty()) {
      if (r[i].empty() && std::abs(b(i)) > 1e-8 && inconsistent) *inconsistent = true;
      continue;
    }
    for (const auto& [c, v] : r[i]) {
      if (!std::isnan(fixed[c])) {
        rb(i) -= v * fixed[c];
      } else {
        if (colmap[c] < 0) colmap[c] = nc++;
        red[i].push_back({colmap[c], v});
      }
    }
    if (red[i].empty()) {
      if (std::abs(rb(i)) > 1e-8 && inconsistent) *inconsistent = true;
      continue;
    }
    rest.push_back(i);
  }
  if (!rest.empty()) {
    MatR at = MatR::Zero(nc, static_cast<Eigen::Index>(rest.size()));
    for (size_t k = 0; k < rest.size(); ++k)
      for (const auto& [c, v] : red[rest[k]]) at(c, static_cast<Eigen::Index>(k)) = v;
    Eigen::ColPivHouseholderQR<MatR> qr(at);
    qr.setThreshold(tol);
    Eigen::Index rank = qr.rank();
    std::vector<int> chosen;
    for (Eigen::Index k = 0; k < rank; ++k) chosen.push_back(static_cast<int>(qr.colsPermutation().indices()(k)));
    std::sort(chosen.begin(), chosen.end());
    std::vector<char> picked(rest.size(), 0);
    for (int k : chosen) {
      keep[rest[k]] = 1;
      picked[k] = 1;
    }
    if (inconsistent && static_cast<size_t>(rank) < rest.size()) {
      // Least-norm solution of the kept rows must satisfy the dropped ones.
      MatR ak(rank, nc);
      VecR bk(rank);
      for (Eigen::Index k = 0; k < rank; ++k) {
        ak.row(k) = at.col(chosen[k]).transpose();
        bk(k) = rb(rest[chosen[k]]);
      }
      VecR x = ak.transpose() * (ak * ak.transpose()).ldlt().solve(bk);
      for (size_t k = 0; k < rest.size(); ++k) {
        if (picked[k]) continue;
        double res = at.col(static_cast<Eigen::Index>(k)).dot(x) - rb(rest[k]);
        if (std::abs(res) > 1e-7 * (1 + std::abs(rb(rest[k])))) *inconsistent = true;
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < m; ++i)
    if (keep[i]) out.push_back(i);
  return out;
}

namespace {

using BlockMat = std::vector<MatR>;

struct Row {
  std::vector<BlockEntry> e;
  double rhs;
  double scale;  // original row = scale * normalized row
  int original;
};

double inner(const std::vector<BlockEntry>& a, const BlockMat& w) {
  double s = 0.0;
  for (const auto& e : a) {
    const MatR& m = w[e.block];
    s += e.i == e.j ? e.v * m(e.i, e.i) : e.v * (m(e.i, e.j) + m(e.j, e.i));
  }
  return s;
}

double inner(const BlockMat& a, const BlockMat& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

double fro(const BlockMat& a) {
  double s = 0.0;
  for (const auto& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

void add_entries(BlockMat& w, const std::vector<BlockEntry>& a, double scale) {
  for (const auto& e : a) {
    w[e.block](e.i, e.j) += scale * e.v;
    if (e.i != e.j) w[e.block](e.j, e.i) += scale * e.v;
  }
}

BlockMat zeros(const std::vector<int>& blocks) {
  BlockMat b;
  for (int n : blocks) b.push_back(MatR::Zero(n, n));
  return b;
}

// Largest step keeping X + α dX ⪰ 0, given the Cholesky factor of X.
double max_step(const Eigen::LLT<MatR>& llt, const MatR& dx) {
  MatR s = llt.matrixL().solve(dx);
  s = llt.matrixL().solve(s.transpose()).transpose();
  s = (s + s.transpose()).eval() * 0.5;
  Eigen::SelfAdjointEigenSolver<MatR> es(s, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues()(0);
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

struct Iterate {
  BlockMat x, z;
  VecR y;
};

class Solver {
 public:
  Solver(const SdpProblem& p, const SdpOptions& opt) : p_(p), opt_(opt) {}
  SdpSolution run();

 private:
  void prepare();
  VecR apply_a(const BlockMat& w) const {
    VecR out(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) out(i) = inner(rows_[i].e, w);
    return out;
  }
  BlockMat apply_at(const VecR& y) const {
    BlockMat w = zeros(p_.blocks);
    for (size_t i = 0; i < rows_.size(); ++i)
      if (y(i) != 0.0) add_entries(w, rows_[i].e, y(i));
    return w;
  }
  MatR schur(const BlockMat& x, const BlockMat& zinv) const;
  void fill_solution(SdpSolution& s, const Iterate& it) const;

  const SdpProblem& p_;
  SdpOptions opt_;
  std::vector<Row> rows_;
  BlockMat c_;
  VecR b_;
  double norm_c_ = 1.0, norm_b_ = 1.0;
  double sign_ = 1.0;
  bool inconsistent_ = false;
  // per row: entries grouped by block
  std::vector<std::vector<std::vector<BlockEntry>>> by_block_;
};

void Solver::prepare() {
  p_.validate();
  sign_ = p_.sense == Sense::Maximize ? -1.0 : 1.0;
  // Column ids for dependency detection: upper-triangle positions.
  std::vector<int> offset(p_.blocks.size() + 1, 0);
  for (size_t k = 0; k < p_.blocks.size(); ++k)
    offset[k + 1] = offset[k] + p_.blocks[k] * (p_.blocks[k] + 1) / 2;
  auto col = [&](const BlockEntry& e) {
    int i = std::min(e.i, e.j), j = std::max(e.i, e.j);
    return offset[e.block] + j * (j + 1) / 2 + i;
  };
  std::vector<int> keep;
  const int m = static_cast<int>(p_.constraints.size());
  if (opt_.remove_dependent && m > 0) {
    std::vector<std::vector<std::pair<int, double>>> vr(m);
    VecR rhs(m);
    for (int i = 0; i < m; ++i) {
      for (const auto& e : p_.constraints[i].a) vr[i].push_back({col(e), e.i == e.j ? e.v : 2 * e.v});
      rhs(i) = p_.constraints[i].rhs;
    }
    keep = independent_rows(vr, rhs, offset.back(), &inconsistent_);
  } else {
    for (int i = 0; i < m; ++i) keep.push_back(i);
  }
  for (int i : keep) {
    const auto& c = p_.constraints[i];
    double s = 0.0;
    for (const auto& e : c.a) s += (e.i == e.j ? 1.0 : 2.0) * e.v * e.v;
    s = std::sqrt(s);
    if (s == 0.0) continue;
    Row r;
    r.e = c.a;
    for (auto& e : r.e) e.v /= s;
    r.rhs = c.rhs / s;
    r.scale = s;
    r.original = i;
    rows_.push_back(std::move(r));
  }
  c_ = zeros(p_.blocks);
  add_entries(c_, p_.objective, sign_);
  b_.resize(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) b_(i) = rows_[i].rhs;
  norm_c_ = std::max(1.0, fro(c_));
  norm_b_ = std::max(1.0, b_.norm());
  for (auto& m : c_) m /= norm_c_;
  b_ /= norm_b_;
  by_block_.resize(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) {
    by_block_[i].resize(p_.blocks.size());
    for (const auto& e : rows_[i].e) by_block_[i][e.block].push_back(e);
  }
}

MatR Solver::schur(const BlockMat& x, const BlockMat& zinv) const {
  const Eigen::Index m = static_cast<Eigen::Index>(rows_.size());
  MatR s = MatR::Zero(m, m);
  std::vector<MatR> g(p_.blocks.size());
  std::vector<MatR> xa(p_.blocks.size());
  for (size_t k = 0; k < p_.blocks.size(); ++k) {
    g[k] = MatR::Zero(p_.blocks[k], p_.blocks[k]);
    xa[k] = MatR::Zero(p_.blocks[k], p_.blocks[k]);
  }
  std::vector<int> touched;
  std::vector<char> mark;
  for (Eigen::Index j = 0; j < m; ++j) {
    std::vector<char> used(p_.blocks.size(), 0);
    for (size_t k = 0; k < p_.blocks.size(); ++k) {
      const auto& ent = by_block_[j][k];
      if (ent.empty()) continue;
      used[k] = 1;
      const int n = p_.blocks[k];
      MatR& a = xa[k];
      mark.assign(n, 0);
      touched.clear();
      for (const auto& e : ent) {
        a.col(e.j) += e.v * x[k].col(e.i);
        if (!mark[e.j]) mark[e.j] = 1, touched.push_back(e.j);
        if (e.i != e.j) {
          a.col(e.i) += e.v * x[k].col(e.j);
          if (!mark[e.i]) mark[e.i] = 1, touched.push_back(e.i);
        }
      }
      if (static_cast<int>(touched.size()) * 3 > n) {
        g[k].noalias() = a * zinv[k];
      } else {
        g[k].setZero();
        for (int c : touched) g[k].noalias() += a.col(c) * zinv[k].row(c);
      }
      for (int c : touched) a.col(c).setZero();
    }
    for (Eigen::Index i = j; i < m; ++i) {
      double v = 0.0;
      for (const auto& e : rows_[i].e) {
        if (!used[e.block]) continue;
        const MatR& gg = g[e.block];
        v += e.i == e.j ? e.v * gg(e.i, e.i) : e.v * (gg(e.i, e.j) + gg(e.j, e.i));
      }
      s(i, j) = v;
    }
  }
  s = s.selfadjointView<Eigen::Lower>();
  return s;
}

void Solver::fill_solution(SdpSolution& s, const Iterate& it) const {
  s.x.clear();
  s.z.clear();
  for (const auto& m : it.x) s.x.push_back(m * norm_b_);
  for (const auto& m : it.z) s.z.push_back(m * (norm_c_ * sign_));
  s.y = VecR::Zero(static_cast<Eigen::Index>(p_.constraints.size()));
  for (size_t i = 0; i < rows_.size(); ++i) s.y(rows_[i].original) = it.y(i) * norm_c_ * sign_ / rows_[i].scale;
  // Objectives and residuals in original units.
  BlockMat c = zeros(p_.blocks);
  add_entries(c, p_.objective, 1.0);
  s.primal = inner(c, s.x);
  double dual = 0.0;
  double bn = 0.0;
  double rp = 0.0;
  for (size_t i = 0; i < p_.constraints.size(); ++i) {
    const auto& con = p_.constraints[i];
    dual += con.rhs * s.y(i);
    bn += con.rhs * con.rhs;
    double r = con.rhs - inner(con.a, s.x);
    rp += r * r;
  }
  s.dual = dual;
  s.primal_residual = std::sqrt(rp) / (1 + std::sqrt(bn));
  BlockMat rd = c;
  for (size_t k = 0; k < rd.size(); ++k) rd[k] -= s.z[k];
  for (size_t i = 0; i < p_.constraints.size(); ++i)
    if (s.y(i) != 0.0) add_entries(rd, p_.constraints[i].a, -s.y(i));
  s.dual_residual = fro(rd) / (1 + fro(c));
  s.gap = std::abs(s.primal - s.dual) / (1 + std::abs(s.primal));
}

SdpSolution Solver::run() {
  prepare();
  SdpSolution sol;
  const int nb = static_cast<int>(p_.blocks.size());
  if (inconsistent_) {
    sol.status = SdpStatus::Infeasible;
    sol.message = "linearly dependent constraints with inconsistent right-hand sides";
    return sol;
  }
  double ntot = 0;
  for (int n : p_.blocks) ntot += n;
  Iterate it;
  for (int k = 0; k < nb; ++k) {
    const int n = p_.blocks[k];
    double sn = std::sqrt(static_cast<double>(n));
    double xi = std::max(10.0, sn), eta = std::max(10.0, sn);
    double cnorm = c_[k].norm();
    eta = std::max(eta, sn * cnorm);
    for (size_t i = 0; i < rows_.size(); ++i) {
      double an = 0.0;
      for (const auto& e : by_block_[i][k]) an += (e.i == e.j ? 1.0 : 2.0) * e.v * e.v;
      an = std::sqrt(an);
      if (an == 0.0) continue;
      xi = std::max(xi, sn * (1 + std::abs(b_(i))) / (1 + an));
      eta = std::max(eta, an);
    }
    it.x.push_back(MatR::Identity(n, n) * xi);
    it.z.push_back(MatR::Identity(n, n) * eta);
  }
  it.y = VecR::Zero(static_cast<Eigen::Index>(rows_.size()));

  Iterate best = it;
  double best_err = std::numeric_limits<double>::infinity();
  double gamma = 0.9;
  int stall = 0;
  const double bnorm = b_.norm(), cnorm = fro(c_);
  sol.message = "iteration limit reached";
  for (int iter = 0; iter <= opt_.max_iter; ++iter) {
    sol.iterations = iter;
    VecR rp = b_ - apply_a(it.x);
    BlockMat rd = c_;
    BlockMat aty = apply_at(it.y);
    for (int k = 0; k < nb; ++k) rd[k] -= it.z[k] + aty[k];
    const double pobj = inner(c_, it.x);
    const double dobj = b_.dot(it.y);
    const double pinf = rp.norm() / (1 + bnorm);
    const double dinf = fro(rd) / (1 + cnorm);
    const double scale = norm_b_ * norm_c_;
    const double gap = std::abs(pobj - dobj) * scale / (1 + std::abs(pobj) * scale);
    const double err = std::max({pinf / opt_.feas_tol, dinf / opt_.feas_tol, gap / opt_.gap_tol});
    if (err < best_err) {
      best_err = err;
      best = it;
    }
    if (opt_.verbose) {
      std::ostringstream os;
      os << std::scientific << std::setprecision(3) << "it " << iter << " p " << pobj * scale << " d "
         << dobj * scale << " pinf " << pinf << " dinf " << dinf << " gap " << gap;
      sol.message = os.str();
      fprintf(stderr, "%s\n", sol.message.c_str());
    }
    if (err <= 1.0) {
      sol.status = SdpStatus::Optimal;
      sol.message = "converged";
      break;
    }
    if (dobj > 1e8 && pinf > opt_.feas_tol) {
      sol.status = SdpStatus::Infeasible;
      sol.message = "dual objective diverges: primal infeasible";
      break;
    }
    if (pobj < -1e8 && dinf > opt_.feas_tol) {
      sol.status = SdpStatus::Unbounded;
      sol.message = "primal objective diverges: unbounded";
      break;
    }
    if (iter == opt_.max_iter) break;

    std::vector<Eigen::LLT<MatR>> lx(nb), lz(nb);
    BlockMat zinv(nb);
    bool ok = true;
    for (int k = 0; k < nb; ++k) {
      lx[k].compute(it.x[k]);
      lz[k].compute(it.z[k]);
      if (lx[k].info() != Eigen::Success || lz[k].info() != Eigen::Success) ok = false;
      zinv[k] = lz[k].solve(MatR::Identity(p_.blocks[k], p_.blocks[k]));
      zinv[k] = (zinv[k] + zinv[k].transpose()).eval() * 0.5;
    }
    if (!ok) {
      sol.message = "iterate lost positive definiteness";
      break;
    }
    const double mu = inner(it.x, it.z) / ntot;
    MatR m = schur(it.x, zinv);
    Eigen::LLT<MatR> mchol(m);
    Eigen::LDLT<MatR> mldlt;
    bool use_ldlt = mchol.info() != Eigen::Success;
    if (use_ldlt) mldlt.compute(m);
    auto msolve = [&](const VecR& r) -> VecR {
      if (use_ldlt) return mldlt.solve(r);
      return mchol.solve(r);
    };

    // X·Rd·Z⁻¹ is common to predictor and corrector.
    BlockMat xrdz(nb);
    for (int k = 0; k < nb; ++k) xrdz[k] = it.x[k] * rd[k] * zinv[k];
    const VecR a_xrdz = apply_a(xrdz);

    auto direction = [&](const BlockMat& rc, BlockMat& dx, BlockMat& dz, VecR& dy) {
      BlockMat rcz(nb);
      for (int k = 0; k < nb; ++k) rcz[k] = rc[k] * zinv[k];
      VecR rhs = b_ - apply_a(rcz) + a_xrdz;
      dy = msolve(rhs);
      BlockMat atdy = apply_at(dy);
      dz.resize(nb);
      dx.resize(nb);
      for (int k = 0; k < nb; ++k) {
        dz[k] = rd[k] - atdy[k];
        MatR t = rcz[k] - it.x[k] - it.x[k] * dz[k] * zinv[k];
        dx[k] = (t + t.transpose()) * 0.5;
      }
    };
    auto steps = [&](const BlockMat& dx, const BlockMat& dz, double& ap, double& ad) {
      ap = std::numeric_limits<double>::infinity();
      ad = ap;
      for (int k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(lx[k], dx[k]));
        ad = std::min(ad, max_step(lz[k], dz[k]));
      }
    };

    BlockMat rc(nb);
    for (int k = 0; k < nb; ++k) rc[k] = MatR::Zero(p_.blocks[k], p_.blocks[k]);
    BlockMat dxa, dza;
    VecR dya;
    direction(rc, dxa, dza, dya);
    double apa, ada;
    steps(dxa, dza, apa, ada);
    apa = std::min(1.0, apa);
    ada = std::min(1.0, ada);
    double mu_aff = 0.0;
    for (int k = 0; k < nb; ++k)
      mu_aff += ((it.x[k] + apa * dxa[k]).array() * (it.z[k] + ada * dza[k]).array()).sum();
    mu_aff /= ntot;
    double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);
    if (pinf > 1e-2 || dinf > 1e-2) sigma = std::max(sigma, 0.1);

    for (int k = 0; k < nb; ++k) rc[k] = sigma * mu * MatR::Identity(p_.blocks[k], p_.blocks[k]) - dxa[k] * dza[k];
    BlockMat dx, dz;
    VecR dy;
    direction(rc, dx, dz, dy);
    double ap, ad;
    steps(dx, dz, ap, ad);
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    for (int k = 0; k < nb; ++k) {
      it.x[k] += ap * dx[k];
      it.z[k] += ad * dz[k];
      it.x[k] = (it.x[k] + it.x[k].transpose()).eval() * 0.5;
      it.z[k] = (it.z[k] + it.z[k].transpose()).eval() * 0.5;
    }
    it.y += ad * dy;
    gamma = 0.9 + 0.09 * std::min(ap, ad);
    if (std::max(ap, ad) < 1e-8) {
      if (++stall >= 3) {
        sol.message = "step length stalled";
        break;
      }
    } else {
      stall = 0;
    }
  }
  if (sol.status == SdpStatus::Optimal || sol.status == SdpStatus::NumericalFailure)
    fill_solution(sol, sol.status == SdpStatus::Optimal ? it : best);
  else
    fill_solution(sol, it);
  if (sol.status == SdpStatus::NumericalFailure) {
    std::ostringstream os;
    os << sol.message << " (primal residual " << sol.primal_residual << ", dual residual " << sol.dual_residual
       << ", gap " << sol.gap << ")";
    sol.message = os.str();
  }
  return sol;
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SdpOptions& opt) {
  Solver s(p, opt);
  return s.run();
}

void dump_sdpa(const SdpProblem& p, std::ostream& os) {
  // SDPA's dual side is  max ⟨F_0, Y⟩ s.t. ⟨F_i, Y⟩ = c_i, so F_0 = −C.
  os << "* phasecoh problem dump: " << p.constraints.size() << " constraints\n";
  os << p.constraints.size() << "\n" << p.blocks.size() << "\n";
  for (int b : p.blocks) os << b << " ";
  os << "\n";
  double sign = p.sense == Sense::Maximize ? -1.0 : 1.0;
  os << std::setprecision(17);
  for (const auto& c : p.constraints) os << c.rhs << " ";
  os << "\n";
  for (const auto& e : p.objective)
    os << 0 << " " << e.block + 1 << " " << std::min(e.i, e.j) + 1 << " " << std::max(e.i, e.j) + 1 << " "
       << -sign * e.v << "\n";
  for (size_t k = 0; k < p.constraints.size(); ++k)
    for (const auto& e : p.constraints[k].a)
      os << k + 1 << " " << e.block + 1 << " " << std::min(e.i, e.j) + 1 << " " << std::max(e.i, e.j) + 1 << " "
         << e.v << "\n";
}

}  // namespace phasecoh
