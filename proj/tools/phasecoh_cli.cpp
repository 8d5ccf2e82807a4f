// Command-line front end over the C interface.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "phasecoh/phasecoh.h"

namespace {

enum Exit { kOk = 0, kBadConfig = 2, kSolver = 3, kVerification = 4 };

int exit_for(int status) {
  switch (status) {
    case PHASECOH_OK:
      return kOk;
    case PHASECOH_ERR_SOLVER:
      return kSolver;
    case PHASECOH_ERR_VERIFICATION:
      return kVerification;
    case PHASECOH_ERR_INTERNAL:
      return kSolver;
    default:
      return kBadConfig;
  }
}

struct CString {
  char* p = nullptr;
  ~CString() { phasecoh_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using CostPtr = std::unique_ptr<phasecoh_cost, decltype(&phasecoh_cost_free)>;
using StatePtr = std::unique_ptr<phasecoh_state, decltype(&phasecoh_state_free)>;

int report(int status, const char* what) {
  if (status != PHASECOH_OK) std::cerr << "phasecoh " << what << ": " << phasecoh_last_error() << "\n";
  return exit_for(status);
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "phasecoh: cannot write " << path << "\n";
    return false;
  }
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  return true;
}

std::string utc_stamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PHASECOH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "phasecoh: ignoring malformed PHASECOH_SEED\n";
    }
  }
  return 1;
}

struct Config {
  std::string cost = "holevo";
  std::string state = "plus";
  std::string ensemble = "ginibre";
  std::string out;
  std::string svg;
  std::string only;
  int m = 2;
  int d = 2;
  int n = 1;
  int count = 200;
  int jobs = 1;
  double tol = 0.0;
  std::uint64_t seed = 1;
};

int load_cost(const Config& cfg, CostPtr& cost) {
  phasecoh_cost* raw = nullptr;
  int st = phasecoh_cost_from_spec(cfg.cost.c_str(), &raw);
  if (st != PHASECOH_OK) return report(st, "cost");
  cost.reset(raw);
  return kOk;
}

int load_state(const Config& cfg, StatePtr& state) {
  phasecoh_state* raw = nullptr;
  int st = phasecoh_state_from_spec(cfg.state.c_str(), cfg.d, &raw);
  if (st != PHASECOH_OK) return report(st, "state");
  state.reset(raw);
  return kOk;
}

int cmd_cost_matrix(const Config& cfg) {
  CostPtr cost(nullptr, phasecoh_cost_free);
  if (int rc = load_cost(cfg, cost)) return rc;
  CString json;
  int st = phasecoh_cost_matrix_json(cost.get(), cfg.m, &json.p);
  if (st != PHASECOH_OK) return report(st, "cost-matrix");
  return write_output(cfg.out, json.str()) ? kOk : kBadConfig;
}

int cmd_cmin(const Config& cfg) {
  CostPtr cost(nullptr, phasecoh_cost_free);
  StatePtr state(nullptr, phasecoh_state_free);
  if (int rc = load_cost(cfg, cost)) return rc;
  if (int rc = load_state(cfg, state)) return rc;
  CString json;
  int st = phasecoh_cmin_json(state.get(), cost.get(), cfg.m, &json.p);
  if (st == PHASECOH_ERR_VERIFICATION) {
    // inconsistent results are reported but not written
    std::cerr << json.str() << "\n";
    return report(st, "cmin");
  }
  if (st != PHASECOH_OK) return report(st, "cmin");
  return write_output(cfg.out, json.str()) ? kOk : kBadConfig;
}

int cmd_comb(const Config& cfg) {
  CostPtr cost(nullptr, phasecoh_cost_free);
  StatePtr state(nullptr, phasecoh_state_free);
  if (int rc = load_cost(cfg, cost)) return rc;
  if (int rc = load_state(cfg, state)) return rc;
  CString json;
  int st = phasecoh_comb_json(state.get(), cost.get(), cfg.d, cfg.n, &json.p);
  if (st != PHASECOH_OK) return report(st, "comb");
  return write_output(cfg.out, json.str()) ? kOk : kBadConfig;
}

int cmd_sweep(const Config& cfg) {
  CostPtr cost(nullptr, phasecoh_cost_free);
  if (int rc = load_cost(cfg, cost)) return rc;
  CString csv, svg, log;
  std::string stamp = utc_stamp();
  int st = phasecoh_sweep(cost.get(), cfg.d, cfg.m, cfg.count, cfg.seed, cfg.jobs, cfg.ensemble.c_str(), stamp.c_str(),
                          &csv.p, cfg.svg.empty() ? nullptr : &svg.p, &log.p);
  if (st != PHASECOH_OK) return report(st, "sweep");
  if (!log.str().empty()) std::cerr << log.str();
  if (!write_output(cfg.out, csv.str())) return kBadConfig;
  if (!cfg.svg.empty() && !write_output(cfg.svg, svg.str())) return kBadConfig;
  return kOk;
}

void print_line(const char* line, void*) {
  std::cout << line << std::endl;
}

int cmd_verify(const Config& cfg) {
  CString json;
  int st = phasecoh_verify(cfg.only.empty() ? nullptr : cfg.only.c_str(), cfg.tol, cfg.seed, print_line, nullptr, &json.p);
  if (!cfg.out.empty() && json.p) write_output(cfg.out, json.str());
  if (st == PHASECOH_ERR_VERIFICATION) {
    std::cout << "some checks failed\n";
    return kVerification;
  }
  if (st != PHASECOH_OK) return report(st, "verify");
  std::cout << "all checks passed\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-limited phase estimation: optimal costs, bounds and checks"};
  app.require_subcommand(1);
  Config cfg;
  cfg.seed = default_seed();

  auto* cm = app.add_subcommand("cost-matrix", "Toeplitz cost matrix, C0, lambda_min and its eigenvector as JSON");
  cm->add_option("--cost", cfg.cost, "holevo | window:<delta> | periodized-mse | constant:<c> | JSON | file.json");
  cm->add_option("--m", cfg.m, "number of phase levels")->check(CLI::Range(1, 64));
  cm->add_option("--out", cfg.out, "output file (default stdout)");

  auto* cmin = app.add_subcommand("cmin", "coherence-limited minimal average cost for a single use");
  cmin->add_option("--cost", cfg.cost, "cost function spec");
  cmin->add_option("--state", cfg.state,
                   "plus | max-coherent | isotropic:<p> | diagonal:<p,..> | pure:<a,..> | random:<seed> | JSON | file.json");
  cmin->add_option("--d", cfg.d, "state dimension for builtin states")->check(CLI::Range(1, 16));
  cmin->add_option("--m", cfg.m, "number of phase levels")->check(CLI::Range(1, 24));
  cmin->add_option("--out", cfg.out, "output file (default stdout)");

  auto* comb = app.add_subcommand("comb", "multi-copy optimum from the comb SDP and its dual");
  comb->add_option("--cost", cfg.cost, "cost function spec");
  comb->add_option("--state", cfg.state, "state spec (see cmin)");
  comb->add_option("--d", cfg.d, "dimension of the phase unitary and of builtin states")->check(CLI::Range(2, 8));
  comb->add_option("--n", cfg.n, "number of uses of the phase unitary")->check(CLI::Range(1, 4));
  comb->add_option("--out", cfg.out, "output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "random-state sweep of cmin, weight and robustness as CSV");
  sweep->add_option("--cost", cfg.cost, "cost function spec");
  sweep->add_option("--d", cfg.d, "state dimension")->check(CLI::Range(1, 16));
  sweep->add_option("--m", cfg.m, "number of phase levels")->check(CLI::Range(1, 24));
  sweep->add_option("--ensemble", cfg.ensemble, "ginibre | pure | isotropic");
  sweep->add_option("--count", cfg.count, "number of states")->check(CLI::Range(1, 10000));
  sweep->add_option("--seed", cfg.seed, "base seed (default PHASECOH_SEED or 1)");
  sweep->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1, 256));
  sweep->add_option("--out", cfg.out, "CSV file (default stdout)");
  sweep->add_option("--svg", cfg.svg, "optional SVG scatter plot");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_option("--only", cfg.only, "comma-separated check ids");
  verify->add_option("--tol", cfg.tol, "raise every threshold to at least this value")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "base seed");
  verify->add_option("--out", cfg.out, "JSON report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadConfig;
  }

  if (cm->parsed()) return cmd_cost_matrix(cfg);
  if (cmin->parsed()) return cmd_cmin(cfg);
  if (comb->parsed()) return cmd_comb(cfg);
  if (sweep->parsed()) {
    if (sweep->count("--d") == 0) cfg.d = 5;
    if (sweep->count("--m") == 0) cfg.m = 5;
    return cmd_sweep(cfg);
  }
  if (verify->parsed()) return cmd_verify(cfg);
  return kBadConfig;
}
