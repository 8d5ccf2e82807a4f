#include "phasecoh/phasecoh.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "phasecoh/reports.hpp"
#include "phasecoh/verify.hpp"

struct phasecoh_cost {
  phasecoh::CostFunction cost;
};

struct phasecoh_state {
  phasecoh::DensityMatrix rho;
};

namespace {

thread_local std::string last_error;

int code_of(phasecoh::ErrorKind k) {
  switch (k) {
    case phasecoh::ErrorKind::InvalidArgument:
      return PHASECOH_ERR_INVALID;
    case phasecoh::ErrorKind::DimensionMismatch:
      return PHASECOH_ERR_DIMENSION;
    case phasecoh::ErrorKind::UnknownLabel:
      return PHASECOH_ERR_LABEL;
    case phasecoh::ErrorKind::Solver:
      return PHASECOH_ERR_SOLVER;
    case phasecoh::ErrorKind::Verification:
      return PHASECOH_ERR_VERIFICATION;
  }
  return PHASECOH_ERR_INTERNAL;
}

template <class F>
int guarded(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const phasecoh::Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return PHASECOH_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PHASECOH_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  phasecoh::require(p != nullptr, std::string(what) + " must not be null");
}

std::string format_line(const phasecoh::CriterionResult& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s %-18s worst=%.3e tol=%.1e  %6.1fs  %s", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                r.worst, r.tolerance, r.seconds, r.detail.c_str());
  return buf;
}

}  // namespace

extern "C" {

const char* phasecoh_version(void) { return "0.1.0"; }

const char* phasecoh_last_error(void) { return last_error.c_str(); }

void phasecoh_string_free(char* s) { std::free(s); }

int phasecoh_cost_from_spec(const char* spec, phasecoh_cost** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new phasecoh_cost{phasecoh::cost_from_spec(spec)};
    return PHASECOH_OK;
  });
}

int phasecoh_cost_json(const phasecoh_cost* cost, char** out_json) {
  return guarded([&] {
    need(cost, "cost");
    need(out_json, "out_json");
    *out_json = dup(phasecoh::cost_to_json(cost->cost).dump());
    return PHASECOH_OK;
  });
}

void phasecoh_cost_free(phasecoh_cost* cost) { delete cost; }

int phasecoh_state_from_spec(const char* spec, int d, phasecoh_state** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new phasecoh_state{phasecoh::state_from_spec(spec, d)};
    return PHASECOH_OK;
  });
}

int phasecoh_state_random(int d, uint64_t seed, phasecoh_state** out) {
  return guarded([&] {
    need(out, "out");
    phasecoh::require(d >= 1, "dimension must be >= 1");
    *out = new phasecoh_state{phasecoh::random_density(d, seed)};
    return PHASECOH_OK;
  });
}

int phasecoh_state_dim(const phasecoh_state* state, int* out) {
  return guarded([&] {
    need(state, "state");
    need(out, "out");
    *out = state->rho.dim();
    return PHASECOH_OK;
  });
}

int phasecoh_state_json(const phasecoh_state* state, char** out_json) {
  return guarded([&] {
    need(state, "state");
    need(out_json, "out_json");
    *out_json = dup(phasecoh::density_to_json(state->rho).dump());
    return PHASECOH_OK;
  });
}

void phasecoh_state_free(phasecoh_state* state) { delete state; }

int phasecoh_cost_matrix_json(const phasecoh_cost* cost, int m, char** out_json) {
  return guarded([&] {
    need(cost, "cost");
    need(out_json, "out_json");
    *out_json = dup(phasecoh::cost_matrix_report(cost->cost, m).dump(2));
    return PHASECOH_OK;
  });
}

int phasecoh_cmin_json(const phasecoh_state* state, const phasecoh_cost* cost, int m, char** out_json) {
  return guarded([&] {
    need(state, "state");
    need(cost, "cost");
    need(out_json, "out_json");
    auto j = phasecoh::cmin_report(state->rho, cost->cost, m);
    *out_json = dup(j.dump(2));
    return j["consistent"].get<bool>() ? PHASECOH_OK : PHASECOH_ERR_VERIFICATION;
  });
}

int phasecoh_cmin(const phasecoh_state* state, const phasecoh_cost* cost, int m, double* out) {
  return guarded([&] {
    need(state, "state");
    need(cost, "cost");
    need(out, "out");
    *out = phasecoh::cmin_single(state->rho, cost->cost, m).value;
    return PHASECOH_OK;
  });
}

int phasecoh_comb_json(const phasecoh_state* state, const phasecoh_cost* cost, int d, int n, char** out_json) {
  return guarded([&] {
    need(state, "state");
    need(cost, "cost");
    need(out_json, "out_json");
    *out_json = dup(phasecoh::comb_report(state->rho, cost->cost, d, n).dump(2));
    return PHASECOH_OK;
  });
}

int phasecoh_sweep(const phasecoh_cost* cost, int d, int m, int count, uint64_t seed, int jobs, const char* ensemble,
                   const char* stamp, char** out_csv, char** out_svg, char** out_log) {
  return guarded([&] {
    need(cost, "cost");
    need(out_csv, "out_csv");
    phasecoh::SweepConfig cfg;
    cfg.d = d;
    cfg.m = m;
    cfg.count = count;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.ensemble = phasecoh::ensemble_from_name(ensemble ? ensemble : "ginibre");
    std::string log;
    auto rows = phasecoh::run_sweep(cost->cost, cfg, [&](const std::string& line) { log += line + "\n"; });
    std::ostringstream csv;
    phasecoh::write_sweep_csv(csv, rows, stamp ? stamp : "");
    *out_csv = dup(csv.str());
    if (out_svg) *out_svg = dup(phasecoh::sweep_svg(rows, phasecoh::cost_matrix(cost->cost, m)));
    if (out_log) *out_log = dup(log);
    return PHASECOH_OK;
  });
}

int phasecoh_verify(const char* only, double tol, uint64_t seed, void (*on_line)(const char*, void*), void* user,
                    char** out_json) {
  return guarded([&] {
    phasecoh::VerifyOptions opt;
    opt.tol = tol;
    opt.seed = seed;
    if (only && *only) {
      std::stringstream ss(only);
      std::string id;
      while (std::getline(ss, id, ','))
        if (!id.empty()) opt.only.push_back(id);
    }
    if (on_line)
      opt.on_result = [&](const phasecoh::CriterionResult& r) { on_line(format_line(r).c_str(), user); };
    auto results = phasecoh::run_verification(opt);
    bool all = true;
    phasecoh::Json arr = phasecoh::Json::array();
    for (const auto& r : results) {
      all = all && r.passed;
      arr.push_back({{"id", r.id},
                     {"title", r.title},
                     {"passed", r.passed},
                     {"worst", r.worst},
                     {"tolerance", r.tolerance},
                     {"seconds", r.seconds},
                     {"detail", r.detail}});
    }
    if (out_json) *out_json = dup(phasecoh::Json{{"passed", all}, {"criteria", arr}}.dump(2));
    if (!all) last_error = "verification failed";
    return all ? PHASECOH_OK : PHASECOH_ERR_VERIFICATION;
  });
}

int phasecoh_criteria(char** out_csv) {
  return guarded([&] {
    need(out_csv, "out_csv");
    std::string s;
    for (const auto& id : phasecoh::criterion_ids()) s += (s.empty() ? "" : ",") + id;
    *out_csv = dup(s);
    return PHASECOH_OK;
  });
}

}  // extern "C"
