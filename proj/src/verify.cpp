#include "phasecoh/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "phasecoh/channels.hpp"
#include "phasecoh/combs.hpp"
#include "phasecoh/cost.hpp"
#include "phasecoh/estimate.hpp"
#include "phasecoh/protocol.hpp"
#include "phasecoh/states.hpp"

namespace phasecoh {

namespace {

constexpr double kPi = std::numbers::pi;

// Collects deviations against thresholds; the worst one (relative to its
// threshold) is reported.
class Check {
 public:
  explicit Check(double override_tol) : override_(override_tol) {}

  void dev(const std::string& what, double deviation, double own_tol) {
    double tol = std::max(own_tol, override_);
    ++count_;
    double ratio = std::isnan(deviation) ? INFINITY : (tol > 0 ? deviation / tol : deviation);
    if (ratio > worst_ratio_) {
      worst_ratio_ = ratio;
      worst_ = deviation;
      tol_ = tol;
      worst_what_ = what;
    }
    if (!(deviation <= tol) && !failed_) {
      failed_ = true;
      std::ostringstream os;
      os << what << ": deviation " << deviation << " > " << tol;
      first_failure_ = os.str();
    }
  }

  void expect(const std::string& what, bool ok) {
    ++count_;
    if (!ok && !failed_) {
      failed_ = true;
      first_failure_ = what;
    }
  }

  void error(const std::string& what) { expect(what, false); }

  void fill(CriterionResult& r) const {
    r.passed = !failed_;
    r.worst = worst_;
    r.tolerance = tol_;
    std::ostringstream os;
    os << count_ << " checks";
    if (failed_)
      os << "; first failure: " << first_failure_;
    else if (!worst_what_.empty())
      os << "; worst " << worst_what_;
    r.detail = os.str();
  }

 private:
  double override_;
  int count_ = 0;
  bool failed_ = false;
  double worst_ = 0.0, tol_ = 0.0, worst_ratio_ = -1.0;
  std::string worst_what_, first_failure_;
};

std::string tag(const std::string& base, double v) {
  std::ostringstream os;
  os << base << v;
  return os.str();
}

DensityMatrix relabeled(const DensityMatrix& rho, const std::string& label) {
  return DensityMatrix(rho.mat(), label);
}

// Holevo cost matrix and its spectrum.
void holevo_matrix(Check& ck, std::mt19937_64&) {
  auto h = CostFunction::holevo();
  MatC y2 = cost_matrix(h, 2).matrix.mat();
  MatC expect(2, 2);
  expect << 2, -1, -1, 2;
  ck.dev("Y^(2) entries", max_abs(y2 - expect), 1e-12);
  for (int m = 2; m <= 12; ++m) {
    CostMatrix y = cost_matrix(h, m);
    double s = std::sin(kPi / (2.0 * (m + 1)));
    ck.dev(tag("lambda_min M=", m), std::abs(y.lambda_min - 4 * s * s), 1e-9);
    VecR profile(m);
    for (int j = 0; j < m; ++j) profile(j) = std::sin(kPi * (j + 1) / (m + 1));
    profile.normalize();
    double dv = std::min((y.nu - profile.cast<cd>()).cwiseAbs().maxCoeff(),
                         (y.nu + profile.cast<cd>()).cwiseAbs().maxCoeff());
    ck.dev(tag("eigenvector M=", m), dv, 1e-8);
  }
}

// |+⟩ with the Holevo cost through three independent SDP routes.
void plus_state(Check& ck, std::mt19937_64&) {
  auto h = CostFunction::holevo();
  auto plus = max_coherent(2);
  ck.dev("single-copy primal", std::abs(cmin_single(plus, h, 2).value - 1.0), 1e-6);
  ck.dev("single-copy dual", std::abs(cmin_dual(plus, h, 2).value - 1.0), 1e-6);
  ck.dev("relaxed comb (d=2,N=1)", std::abs(relaxed_comb_sdp(plus, h, 2, 1).value - 1.0), 1e-6);
}

// Qubit closed form against the SDP.
void qubit_closed_form(Check& ck, std::mt19937_64& rng) {
  auto h = CostFunction::holevo();
  for (int i = 0; i < 200; ++i) {
    auto rho = random_density(2, rng);
    ck.dev(tag("qubit state #", i), std::abs(cmin_single(rho, h, 2).value - qubit_exact(rho, h)), 1e-5);
  }
}

// Isotropic family: exact value and tightness of the weight bound.
void sharpness(Check& ck, std::mt19937_64&) {
  auto h = CostFunction::holevo();
  for (int m : {2, 3, 5}) {
    CostMatrix y = cost_matrix(h, m);
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      auto rho = isotropic_state(m, p);
      double v = cmin_single(rho, h, m).value;
      std::string where = "M=" + std::to_string(m) + " p=" + std::to_string(p);
      ck.dev("value " + where, std::abs(v - (p * y.lambda_min + (1 - p) * y.c0)), 1e-5);
      ck.dev("bound " + where, std::abs(weight_bound(rho, h, m) - v), 1e-5);
    }
  }
}

// Multi-copy comb SDP and its dual against the single-copy SDP at M = (d−1)N+1.
void comb_oracle(Check& ck, std::mt19937_64& rng) {
  auto h = CostFunction::holevo();
  struct Case {
    int d, n, dim;
  };
  for (Case cs : {Case{2, 1, 2}, Case{2, 2, 2}, Case{3, 1, 3}}) {
    int m = reduce_copies(cs.d, cs.n);
    for (int i = 0; i < 20; ++i) {
      auto rho = random_density(cs.dim, rng);
      double ref = cmin_single(rho, h, m).value;
      std::ostringstream where;
      where << "(d,N)=(" << cs.d << "," << cs.n << ") #" << i;
      double scale = std::max(1.0, std::abs(ref));
      ck.dev("primal " + where.str(), std::abs(relaxed_comb_sdp(rho, h, cs.d, cs.n).value - ref) / scale, 1e-4);
      ck.dev("dual " + where.str(), std::abs(multicopy_dual_numeric(rho, h, cs.d, cs.n).value - ref) / scale, 1e-4);
    }
  }
}

// Compiled network reproduces V_φ^(M) and consists of MIO channels.
void compilation(Check& ck, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 2 * kPi);
  for (auto [d, n] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}}) {
    auto net = compile_network(d, n);
    const int m = net.m_target;
    std::string where = "(d,N)=(" + std::to_string(d) + "," + std::to_string(n) + ")";
    std::vector<MatC> inputs;
    for (int k = 0; k < m; ++k) {
      MatC e = MatC::Zero(m, m);
      e(k, k) = 1.0;
      inputs.push_back(e);
    }
    inputs.push_back(max_coherent(m).mat());
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      double phi = uni(rng);
      MatC v = phase_unitary(m, phi);
      for (const auto& in : inputs) worst = std::max(worst, max_abs(simulate_compiled(net, phi, in) - v * in * v.adjoint()));
    }
    ck.dev("simulation " + where, worst, 1e-12);
    auto chans = net.channels();
    for (size_t i = 0; i < chans.size(); ++i)
      ck.expect("MIO channel " + std::to_string(i) + " " + where, is_mio(chans[i], 1e-9) && chans[i].is_cptp(1e-9));
  }
}

// Simulated optimal protocol reproduces the SDP optimum.
void protocol(Check& ck, std::mt19937_64& rng) {
  auto h = CostFunction::holevo();
  auto banded = CostFunction::fourier_series({{0, 2.0}, {1, -0.5}, {-1, -0.5}, {2, -0.25}, {-2, -0.25}});
  const std::pair<int, int> cases[] = {{2, 1}, {2, 2}, {3, 1}, {2, 3}};
  for (int i = 0; i < 20; ++i) {
    auto [d, n] = cases[i % 4];
    const CostFunction& c = ((i / 4) % 2 == 0) ? h : banded;
    auto rho = random_density(i % 3 == 0 ? 3 : 2, rng);
    auto run = optimal_protocol(rho, c, d, n, 2048);
    std::string where = "instance " + std::to_string(i);
    ck.dev("quadrature vs SDP " + where, std::abs(run.average_cost - run.sdp_value), 1e-6);
    for (double phi : {0.3, 2.0, 4.5}) {
      VecR p = run.probabilities(phi);
      ck.dev("normalization " + where, std::abs(p.sum() - 1.0), 1e-10);
      ck.expect("nonnegative outcome probabilities " + where, p.minCoeff() >= -1e-12);
    }
  }
}

// Advantage is a faithful convex monotone.
void monotone(Check& ck, std::mt19937_64& rng) {
  auto h = CostFunction::holevo();
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 10; ++i) states.push_back(random_density(3, rng));
  std::map<std::pair<int, int>, double> base;
  auto adv = [&](int i, int m) {
    auto key = std::make_pair(i, m);
    auto it = base.find(key);
    if (it != base.end()) return it->second;
    return base[key] = advantage(states[i], h, m);
  };
  for (int c = 0; c < 30; ++c) {
    int m = 2 + c % 3;
    int dout = 2 + (c / 3) % 3;
    MioMode mode = c % 2 == 0 ? MioMode::KrausFamily : MioMode::SdpExtremal;
    ChoiMatrix ch = random_mio(3, dout, mode, rng);
    for (int i = 0; i < 10; ++i) {
      CMatrix out = apply_choi(ch, relabeled(states[i], "in").cmat());
      DensityMatrix o(out.mat(), "0", 1e-8);
      double viol = advantage(o, h, m) - adv(i, m);
      ck.dev("monotonicity channel " + std::to_string(c), std::max(0.0, viol), 1e-6);
    }
  }
  for (int i = 0; i + 1 < 10; i += 2) {
    for (double p : {0.2, 0.5, 0.8}) {
      MatC mix = p * states[i].mat() + (1 - p) * states[i + 1].mat();
      double lhs = advantage(DensityMatrix(mix), h, 3);
      double rhs = p * adv(i, 3) + (1 - p) * adv(i + 1, 3);
      ck.dev("convexity pair " + std::to_string(i / 2), std::max(0.0, lhs - rhs), 1e-6);
    }
  }
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  for (int m = 2; m <= 4; ++m) {
    std::vector<double> p(3);
    for (auto& x : p) x = uni(rng);
    double s = p[0] + p[1] + p[2];
    for (auto& x : p) x /= s;
    ck.dev("diagonal state M=" + std::to_string(m), std::abs(advantage(diagonal_state(p), h, m)), 1e-7);
  }
  for (int m = 2; m <= 4; ++m) {
    MatC y = cost_matrix(h, m).matrix.mat();
    double ymax = 0.0;
    for (int l = 1; l < m; ++l) ymax = std::max(ymax, std::abs(y(0, l)));
    for (int i = 0; i < 10; ++i) {
      const MatC& r = states[i].mat();
      double rmax = 0.0;
      for (int a = 0; a < r.rows(); ++a)
        for (int b = 0; b < r.cols(); ++b)
          if (a != b) rmax = std::max(rmax, std::abs(r(a, b)));
      double witness = 2 * ymax * rmax;
      ck.dev("witness M=" + std::to_string(m), std::max(0.0, witness - adv(i, m)), 1e-6);
    }
  }
}

// Weight of coherence and the weight bound.
void weight(Check& ck, std::mt19937_64& rng) {
  for (int m : {2, 3, 5})
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0})
      ck.dev("W(isotropic) M=" + std::to_string(m), std::abs(weight_of_coherence(isotropic_state(m, p)) - p), 1e-6);
  auto h = CostFunction::holevo();
  CostMatrix y = cost_matrix(h, 5);
  for (int i = 0; i < 200; ++i) {
    auto rho = random_density(5, rng);
    double b = weight_bound(weight_of_coherence(rho), y);
    ck.dev("bound below cmin #" + std::to_string(i), std::max(0.0, b - cmin_single(rho, h, 5).value), 1e-6);
  }
}

// Superchannel toolkit.
void comb_toolkit(Check& ck, std::mt19937_64& rng) {
  Comb s = entangled_probe_superchannel(bell_measurement());
  ck.dev("superchannel closed form", max_abs(s.mat().mat() - bell_superchannel_closed_form().mat()), 1e-12);
  int level = -1;
  ck.expect("superchannel is not MIO-compatible", !is_mio_compatible(s, 1e-8, &level));
  ck.expect("MIO-compatibility fails at j=0", level == 0);
  for (int i = 0; i < 20; ++i) {
    ChoiMatrix ch = random_mio(2, 2, i % 2 ? MioMode::SdpExtremal : MioMode::KrausFamily, rng, "1", "2");
    CMatrix out = reorder(link(s.mat(), ch.mat()), {"0", "3"});
    ChoiMatrix res(SystemDims({"0"}, {2}), SystemDims({"3"}, {4}), out);
    ck.expect("image of channel " + std::to_string(i) + " is a MIO channel", res.is_cptp(1e-9) && is_mio(res, 1e-9));
  }
  auto ex = extract_coherent_bit();
  ck.dev("extracted Choi closed form", max_abs(ex.linked.mat() - extracted_closed_form().mat()), 1e-12);
  VecC plus(2);
  plus << 1, 1;
  plus /= std::sqrt(2.0);
  double fid = (plus.adjoint() * ex.output.mat() * plus)(0, 0).real();
  ck.dev("coherent bit fidelity", 1.0 - fid, 1e-12);

  // two-outcome construction: average cost 1 for every input state
  Comb two = two_outcome_bell_superchannel();
  auto h = CostFunction::holevo();
  const int grid = 64;
  for (int i = 0; i < 20; ++i) {
    auto rho = random_density(2, rng);
    double acc = 0.0;
    for (int g = 0; g < grid; ++g) {
      double phi = 2 * kPi * g / grid;
      MatC jphi = MatC::Zero(4, 4);  // Σ e^{iφ(n−m)} |nn⟩⟨mm|
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) jphi(a * 2 + a, b * 2 + b) = std::exp(cd(0.0, phi * (a - b)));
      for (int x = 0; x < 2; ++x) {
        MatC ex3 = MatC::Zero(2, 2);
        ex3(x, x) = 1.0;
        CMatrix op = tensor(tensor(CMatrix("0", rho.mat().transpose()), CMatrix(SystemDims({"1", "2"}, {2, 2}), jphi.transpose())),
                            CMatrix("3", ex3));
        double p = (op.mat() * two.mat().mat()).trace().real();
        acc += p * h(phi - kPi * x);
      }
    }
    ck.dev("two-outcome average cost #" + std::to_string(i), std::abs(acc / grid - 1.0), 1e-9);
  }
}

// Textbook phase estimation success probability.
void qpe(Check& ck, std::mt19937_64&) {
  const double bound = 4.0 / (kPi * kPi);
  for (int t = 4; t <= 8; ++t) {
    double worst = INFINITY;
    for (int i = 0; i <= 100; ++i) worst = std::min(worst, textbook_qpe(t, 2 * kPi * i / 100.0, 0, 0).best_probability);
    ck.dev("best-approximation probability t=" + std::to_string(t), std::max(0.0, bound - worst), 1e-9);
    int dim = 1 << t;
    for (int k : {0, 1, dim / 3, dim - 1}) {
      auto r = textbook_qpe(t, 2 * kPi * k / dim, 0, 0);
      ck.dev("exact phase t=" + std::to_string(t), 1.0 - r.probabilities(k), 1e-12);
    }
  }
}

struct Entry {
  const char* id;
  const char* title;
  void (*fn)(Check&, std::mt19937_64&);
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = {
      {"holevo-matrix", "Holevo cost matrix spectrum", holevo_matrix},
      {"plus-state", "|+> optimum via primal, dual and comb SDPs", plus_state},
      {"qubit-closed-form", "qubit closed form vs SDP", qubit_closed_form},
      {"sharpness", "isotropic family value and bound tightness", sharpness},
      {"comb-oracle", "multi-copy comb SDP and dual vs single-copy SDP", comb_oracle},
      {"compilation", "compiled network implements V^(M) with MIO parts", compilation},
      {"protocol", "simulated optimal protocol vs SDP optimum", protocol},
      {"monotone", "advantage monotonicity, convexity, faithfulness", monotone},
      {"weight", "weight of coherence and weight bound", weight},
      {"comb-toolkit", "superchannel constructions", comb_toolkit},
      {"qpe", "textbook phase estimation success probability", qpe},
  };
  return r;
}

}  // namespace

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.emplace_back(e.id);
  return ids;
}

CriterionResult run_criterion(const std::string& id, const VerifyOptions& opt) {
  const Entry* entry = nullptr;
  size_t index = 0;
  for (size_t i = 0; i < registry().size(); ++i)
    if (id == registry()[i].id) {
      entry = &registry()[i];
      index = i;
    }
  require(entry != nullptr, "unknown criterion '" + id + "'");
  CriterionResult r;
  r.id = entry->id;
  r.title = entry->title;
  Check ck(opt.tol);
  std::mt19937_64 rng(opt.seed + 7919 * index);
  auto t0 = std::chrono::steady_clock::now();
  try {
    entry->fn(ck, rng);
  } catch (const std::exception& e) {
    ck.error(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ck.fill(r);
  return r;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& opt) {
  auto ids = criterion_ids();
  for (const auto& o : opt.only)
    require(std::find(ids.begin(), ids.end(), o) != ids.end(), "unknown criterion '" + o + "'");
  std::vector<CriterionResult> out;
  for (const auto& id : ids) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    out.push_back(run_criterion(id, opt));
    if (opt.on_result) opt.on_result(out.back());
  }
  return out;
}

}  // namespace phasecoh
