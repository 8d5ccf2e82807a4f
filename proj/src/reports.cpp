#include "phasecoh/reports.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace phasecoh {

Json cost_matrix_report(const CostFunction& c, int m) {
  CostMatrix y = cost_matrix(c, m);
  Json j;
  j["m"] = m;
  j["cost"] = cost_to_json(c);
  j["matrix"] = matrix_to_json(y.matrix.mat());
  j["c0"] = y.c0;
  j["lambda_min"] = y.lambda_min;
  j["nu"] = matrix_to_json(MatC(y.nu));
  j["shift"] = y.shift;
  return j;
}

Json cmin_report(const DensityMatrix& rho, const CostFunction& c, int m) {
  CostMatrix y = cost_matrix(c, m);
  EstimationResult primal = cmin_single(rho, c, m);
  EstimationResult dual = cmin_dual(rho, c, m);
  double w = weight_of_coherence(rho);
  double bound = weight_bound(w, y);

  Json j;
  j["cmin"] = primal.value;
  j["advantage"] = y.c0 - primal.value;
  j["dual"] = dual.value;
  j["gap"] = std::abs(primal.value - dual.value) / (1.0 + std::abs(primal.value));
  j["weight"] = w;
  j["weight_bound"] = bound;
  j["c0"] = y.c0;
  j["lambda_min"] = y.lambda_min;
  j["shift"] = y.shift;
  j["m"] = m;
  j["status"] = to_string(primal.status);

  Json failed = Json::array();
  if (!(j["gap"].get<double>() <= 1e-6)) failed.push_back("primal/dual gap above 1e-6");
  if (!(bound <= primal.value + 1e-6)) failed.push_back("weight bound above cmin");
  if (!(primal.value >= y.lambda_min - 1e-7 && primal.value <= y.c0 + 1e-7)) failed.push_back("cmin outside [lambda_min, C0]");
  if (rho.dim() == 2 && m == 2) {
    double q = qubit_exact(rho, c);
    j["qubit_exact"] = q;
    if (!(std::abs(q - primal.value) <= 1e-5)) failed.push_back("qubit closed form disagrees with cmin");
  }
  j["consistent"] = failed.empty();
  j["failed_checks"] = failed;
  return j;
}

Json comb_report(const DensityMatrix& rho, const CostFunction& c, int d, int n) {
  int m = reduce_copies(d, n);
  EstimationResult primal = relaxed_comb_sdp(rho, c, d, n);
  EstimationResult dual = multicopy_dual_numeric(rho, c, d, n);
  EstimationResult single = cmin_single(rho, c, m);
  Json j;
  j["value"] = primal.value;
  j["dual"] = dual.value;
  j["gap"] = std::abs(primal.value - dual.value) / (1.0 + std::abs(primal.value));
  j["m"] = m;
  j["single_copy"] = single.value;
  j["multicopy_dual"] = dual.value;
  j["status"] = to_string(primal.status);
  return j;
}

Ensemble ensemble_from_name(const std::string& name) {
  if (name == "ginibre") return Ensemble::Ginibre;
  if (name == "pure") return Ensemble::Pure;
  if (name == "isotropic") return Ensemble::Isotropic;
  fail("unknown ensemble '" + name + "' (expected ginibre, pure or isotropic)");
}

std::string ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::Ginibre:
      return "ginibre";
    case Ensemble::Pure:
      return "pure";
    case Ensemble::Isotropic:
      return "isotropic";
  }
  return "?";
}

DensityMatrix sweep_state(const SweepConfig& cfg, int index) {
  std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(index));
  switch (cfg.ensemble) {
    case Ensemble::Ginibre:
      return random_density(cfg.d, rng);
    case Ensemble::Pure: {
      VecC v = random_unitary(cfg.d, rng).col(0);
      return DensityMatrix(MatC(v * v.adjoint()));
    }
    case Ensemble::Isotropic: {
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      return isotropic_state(cfg.d, uni(rng));
    }
  }
  fail("bad ensemble");
}

std::vector<SweepRow> run_sweep(const CostFunction& c, const SweepConfig& cfg,
                                const std::function<void(const std::string&)>& log) {
  require(cfg.d >= 1 && cfg.m >= 1, "sweep: d and m must be >= 1");
  require(cfg.count >= 1 && cfg.count <= 10000, "sweep: count must be in [1, 10000]");
  require(cfg.jobs >= 1, "sweep: jobs must be >= 1");
  CostMatrix y = cost_matrix(c, cfg.m);
  std::vector<SweepRow> rows(cfg.count);
  std::mutex log_mu;
  std::atomic<int> next{0};

  auto work = [&] {
    for (int i = next++; i < cfg.count; i = next++) {
      SweepRow& r = rows[i];
      r.index = i;
      try {
        DensityMatrix rho = sweep_state(cfg, i);
        r.weight = weight_of_coherence(rho);
        r.robustness_scaled = cfg.d > 1 ? robustness_of_coherence(rho) / (cfg.d - 1) : 0.0;
        r.cmin = cmin_single(rho, c, cfg.m).value;
        r.weight_bound = weight_bound(r.weight, y);
        r.advantage = y.c0 - r.cmin;
        if (!(r.weight_bound <= r.cmin + 1e-6)) {
          r.ok = false;
          r.note = "weight bound exceeds cmin";
        }
      } catch (const std::exception& e) {
        r.ok = false;
        r.note = e.what();
      }
      if (!r.ok && log) {
        std::lock_guard<std::mutex> lock(log_mu);
        log("row " + std::to_string(i) + ": " + r.note);
      }
    }
  };
  int jobs = std::min(cfg.jobs, cfg.count);
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

namespace {

struct Panel {
  double x0, y0, w, h;  // pixel box
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void axes(std::ostringstream& os, const Panel& p, const std::string& xlabel, const std::string& ylabel) {
  os << "<rect x='" << p.x0 << "' y='" << p.y0 << "' width='" << p.w << "' height='" << p.h
     << "' fill='none' stroke='black'/>\n";
  for (int k = 0; k <= 4; ++k) {
    double xv = p.xmin + (p.xmax - p.xmin) * k / 4, yv = p.ymin + (p.ymax - p.ymin) * k / 4;
    os << "<text x='" << p.px(xv) << "' y='" << p.y0 + p.h + 16 << "' font-size='11' text-anchor='middle'>"
       << std::round(xv * 100) / 100 << "</text>\n";
    os << "<text x='" << p.x0 - 6 << "' y='" << p.py(yv) + 4 << "' font-size='11' text-anchor='end'>"
       << std::round(yv * 100) / 100 << "</text>\n";
  }
  os << "<text x='" << p.x0 + p.w / 2 << "' y='" << p.y0 + p.h + 34 << "' font-size='13' text-anchor='middle'>" << xlabel
     << "</text>\n";
  os << "<text x='" << p.x0 - 40 << "' y='" << p.y0 + p.h / 2 << "' font-size='13' text-anchor='middle' transform='rotate(-90 "
     << p.x0 - 40 << ' ' << p.y0 + p.h / 2 << ")'>" << ylabel << "</text>\n";
}

}  // namespace

std::string sweep_svg(const std::vector<SweepRow>& rows, const CostMatrix& y) {
  double lo = y.lambda_min, hi = y.c0;
  double pad = 0.05 * std::max(hi - lo, 1e-9);
  Panel left{70, 20, 360, 300, 0.0, 1.0, lo - pad, hi + pad};
  Panel right{530, 20, 360, 300, 0.0, 1.0, lo - pad, hi + pad};
  double rmax = 1.0;
  for (const auto& r : rows)
    if (r.ok) rmax = std::max(rmax, r.robustness_scaled);
  right.xmax = rmax;

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='920' height='380' font-family='sans-serif'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  axes(os, left, "1 - W", "cmin");
  axes(os, right, "C_R / (d-1)", "cmin");
  // weight bound: λ_min + (C₀ − λ_min)(1 − W)
  os << "<line x1='" << left.px(0) << "' y1='" << left.py(lo) << "' x2='" << left.px(1) << "' y2='" << left.py(hi)
     << "' stroke='crimson' stroke-width='1.5'/>\n";
  for (const auto& r : rows) {
    if (!r.ok) continue;
    os << "<circle cx='" << left.px(1 - r.weight) << "' cy='" << left.py(r.cmin) << "' r='2' fill='steelblue'/>\n";
    os << "<circle cx='" << right.px(r.robustness_scaled) << "' cy='" << right.py(r.cmin)
       << "' r='2' fill='darkorange'/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace phasecoh
