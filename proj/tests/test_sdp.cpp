#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "phasecoh/complex_sdp.hpp"
#include "phasecoh/cost.hpp"
#include "phasecoh/error.hpp"

using namespace phasecoh;
using testing::dist;

namespace {

SdpProblem trace_problem(double rhs_first) {
  // min Tr X  s.t.  X_00 = rhs_first, X ⪰ 0 (2×2)
  SdpProblem p;
  p.blocks = {2};
  p.objective = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}}, rhs_first});
  return p;
}

ComplexSdp lambda_min_problem(const MatC& y) {
  ComplexSdp p;
  p.n = static_cast<int>(y.rows());
  p.set_objective(y);
  std::vector<std::tuple<int, int, cd>> tr;
  for (int i = 0; i < p.n; ++i) tr.emplace_back(i, i, 1.0);
  p.add_functional(tr, 1.0, false);
  return p;
}

}  // namespace

TEST_CASE("realify embedding") {
  MatR r = realify(MatC(MatC::Identity(2, 2) * 3.0));
  MatR expect = MatR::Zero(4, 4);
  expect.diagonal().setConstant(3.0);
  CHECK((r - expect).cwiseAbs().maxCoeff() == 0.0);

  MatC h(2, 2);
  h << 0, cd(0, -1), cd(0, 1), 0;
  Eigen::SelfAdjointEigenSolver<MatR> es(realify(h));
  VecR ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));

  std::mt19937_64 rng(1);
  MatC a = testing::random_matrix(3, 3, rng);
  MatC herm = a + a.adjoint();
  CHECK(dist(derealify(realify(herm)), herm) < 1e-15);
}

TEST_CASE("small real SDP") {
  SdpSolution s = solve(trace_problem(1.0));
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(s.dual == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(s.gap < 1e-7);
}

TEST_CASE("infeasible SDP is reported") {
  SdpProblem p;
  p.blocks = {2};
  p.objective = {{0, 0, 0, 1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}}, -1.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::Infeasible);
}

TEST_CASE("inconsistent duplicate rows are infeasible") {
  SdpProblem p = trace_problem(1.0);
  p.constraints.push_back({{{0, 0, 0, 1.0}}, 2.0});
  CHECK(solve(p).status == SdpStatus::Infeasible);
}

TEST_CASE("redundant rows are dropped") {
  SdpProblem p = trace_problem(1.0);
  p.constraints.push_back({{{0, 0, 0, 2.0}}, 2.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("maximization sense") {
  // max X_01 s.t. X_00 = X_11 = 1 → 1
  SdpProblem p;
  p.blocks = {2};
  p.sense = Sense::Maximize;
  p.objective = {{0, 0, 1, 0.5}};
  p.constraints.push_back({{{0, 0, 0, 1.0}}, 1.0});
  p.constraints.push_back({{{0, 1, 1, 1.0}}, 1.0});
  SdpSolution s = solve(p);
  CHECK(s.status == SdpStatus::Optimal);
  CHECK(s.primal == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("complex SDP reproduces lambda_min") {
  auto y = cost_matrix(CostFunction::holevo(), 2);
  ComplexSdpResult r = solve_complex(lambda_min_problem(y.matrix.mat()));
  CHECK(r.status == SdpStatus::Optimal);
  CHECK(r.primal == doctest::Approx(1.0).epsilon(1e-7));

  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    MatC a = testing::random_matrix(4, 4, rng);
    MatC h = a + a.adjoint();
    ComplexSdpResult s = solve_complex(lambda_min_problem(h));
    CHECK(s.status == SdpStatus::Optimal);
    CHECK(s.primal == doctest::Approx(min_eigenvalue(h)).epsilon(1e-6));
    // optimizer is a unit-trace PSD matrix
    CHECK(std::abs(s.x.trace() - 1.0) < 1e-7);
    CHECK(min_eigenvalue(s.x) > -1e-7);
  }
}

TEST_CASE("complex map constraints") {
  // min Re Tr(C X) s.t. diag(X) = (0.5, 0.5), with C = −σ_y: optimum −1, Re Tr(CX) = −2 Im X_10
  MatC c(2, 2);
  c << 0, cd(0, 1), cd(0, -1), 0;
  ComplexSdp p;
  p.n = 2;
  p.set_objective(c);
  MatC target = MatC::Zero(2, 2);
  target(0, 0) = target(1, 1) = 0.5;
  p.add_map_constraint([](const MatC& x) { return MatC(x.diagonal().asDiagonal()); }, target);
  ComplexSdpResult r = solve_complex(p);
  CHECK(r.status == SdpStatus::Optimal);
  CHECK(r.primal == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(std::abs(r.x(1, 0) - cd(0, 0.5)) < 1e-6);
}

TEST_CASE("sparse Hermitian round trip") {
  std::mt19937_64 rng(2);
  MatC a = testing::random_matrix(5, 5, rng);
  MatC h = a + a.adjoint();
  CHECK(dist(dense_from_sparse(sparse_from_dense(h), 5), h) < 1e-15);
}

TEST_CASE("SDPA dump") {
  std::ostringstream os;
  dump_sdpa(trace_problem(1.0), os);
  std::string s = os.str();
  CHECK(s.find("constraints\n1\n1\n2 \n") != std::string::npos);
}

TEST_CASE("solver problems are validated") {
  SdpProblem p = trace_problem(1.0);
  p.constraints[0].a[0].i = 5;
  CHECK_THROWS_AS(solve(p), Error);
}
