// Exercises the shared library through its C header only.
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "phasecoh/phasecoh.h"

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { phasecoh_string_free(p); }
  nlohmann::json json() const { return nlohmann::json::parse(p); }
};

}  // namespace

TEST_CASE("version and criteria") {
  CHECK(std::strlen(phasecoh_version()) > 0);
  Owned ids;
  REQUIRE(phasecoh_criteria(&ids.p) == PHASECOH_OK);
  std::string s = ids.p;
  CHECK(s.find("holevo-matrix") != std::string::npos);
  CHECK(s.find("comb-oracle") != std::string::npos);
}

TEST_CASE("cost handle") {
  phasecoh_cost* cost = nullptr;
  REQUIRE(phasecoh_cost_from_spec("holevo", &cost) == PHASECOH_OK);
  Owned m;
  REQUIRE(phasecoh_cost_matrix_json(cost, 2, &m.p) == PHASECOH_OK);
  auto j = m.json();
  CHECK(j["lambda_min"].get<double>() == doctest::Approx(1.0));
  CHECK(j["matrix"]["re"][0][0].get<double>() == doctest::Approx(2.0));
  CHECK(j["matrix"]["re"][0][1].get<double>() == doctest::Approx(-1.0));
  Owned cj;
  CHECK(phasecoh_cost_json(cost, &cj.p) == PHASECOH_OK);
  CHECK(cj.json()["kind"] == "holevo");
  phasecoh_cost_free(cost);
}

TEST_CASE("errors map to status codes") {
  phasecoh_cost* cost = nullptr;
  CHECK(phasecoh_cost_from_spec("bogus", &cost) == PHASECOH_ERR_INVALID);
  CHECK(cost == nullptr);
  CHECK(std::strlen(phasecoh_last_error()) > 0);
  CHECK(phasecoh_cost_from_spec(nullptr, &cost) == PHASECOH_ERR_INVALID);
  phasecoh_state* st = nullptr;
  CHECK(phasecoh_state_from_spec("diagonal:0.5,0.7", 2, &st) == PHASECOH_ERR_INVALID);
  REQUIRE(phasecoh_cost_from_spec("holevo", &cost) == PHASECOH_OK);
  Owned out;
  CHECK(phasecoh_cost_matrix_json(cost, 0, &out.p) == PHASECOH_ERR_INVALID);
  phasecoh_cost_free(cost);
  // successful calls clear the message
  REQUIRE(phasecoh_cost_from_spec("holevo", &cost) == PHASECOH_OK);
  CHECK(std::strlen(phasecoh_last_error()) == 0);
  phasecoh_cost_free(cost);
  phasecoh_cost_free(nullptr);
  phasecoh_state_free(nullptr);
}

TEST_CASE("cmin through the C interface") {
  phasecoh_cost* cost = nullptr;
  phasecoh_state* plus = nullptr;
  REQUIRE(phasecoh_cost_from_spec("holevo", &cost) == PHASECOH_OK);
  REQUIRE(phasecoh_state_from_spec("plus", 2, &plus) == PHASECOH_OK);
  int d = 0;
  CHECK(phasecoh_state_dim(plus, &d) == PHASECOH_OK);
  CHECK(d == 2);
  double v = 0.0;
  REQUIRE(phasecoh_cmin(plus, cost, 2, &v) == PHASECOH_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  Owned report;
  REQUIRE(phasecoh_cmin_json(plus, cost, 2, &report.p) == PHASECOH_OK);
  auto j = report.json();
  CHECK(j["consistent"].get<bool>());
  CHECK(j["qubit_exact"].get<double>() == doctest::Approx(1.0));

  phasecoh_state* diag = nullptr;
  REQUIRE(phasecoh_state_from_spec("diagonal:0.4,0.6", 2, &diag) == PHASECOH_OK);
  Owned r2;
  REQUIRE(phasecoh_cmin_json(diag, cost, 3, &r2.p) == PHASECOH_OK);
  CHECK(r2.json()["cmin"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(r2.json()["advantage"].get<double>()) < 1e-6);

  Owned comb;
  REQUIRE(phasecoh_comb_json(plus, cost, 2, 1, &comb.p) == PHASECOH_OK);
  CHECK(comb.json()["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
  phasecoh_state_free(diag);
  phasecoh_state_free(plus);
  phasecoh_cost_free(cost);
}

TEST_CASE("sweep is deterministic through the C interface") {
  phasecoh_cost* cost = nullptr;
  REQUIRE(phasecoh_cost_from_spec("holevo", &cost) == PHASECOH_OK);
  Owned a, b, c, log;
  REQUIRE(phasecoh_sweep(cost, 3, 3, 4, 99, 1, "ginibre", nullptr, &a.p, nullptr, &log.p) == PHASECOH_OK);
  REQUIRE(phasecoh_sweep(cost, 3, 3, 4, 99, 2, "ginibre", "", &b.p, nullptr, nullptr) == PHASECOH_OK);
  CHECK(std::string(a.p) == std::string(b.p));
  CHECK(phasecoh_sweep(cost, 3, 3, 4, 99, 1, "unknown", nullptr, &c.p, nullptr, nullptr) == PHASECOH_ERR_INVALID);
  phasecoh_cost_free(cost);
}

TEST_CASE("verify subset") {
  int lines = 0;
  auto count = [](const char*, void* user) { ++*static_cast<int*>(user); };
  Owned report;
  REQUIRE(phasecoh_verify("holevo-matrix,qpe", 0.0, 1, count, &lines, &report.p) == PHASECOH_OK);
  CHECK(lines == 2);
  auto j = report.json();
  CHECK(j["passed"].get<bool>());
  CHECK(j["criteria"].size() == 2);
  CHECK(phasecoh_verify("no-such-check", 0.0, 1, nullptr, nullptr, nullptr) == PHASECOH_ERR_INVALID);
}
