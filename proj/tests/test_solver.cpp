#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orx/solver.hpp"

using namespace orx;

namespace {

// min x1 + 2 x2  s.t.  x1 + x2 = 1, x >= 0   ->  1 at (1, 0)
ConicProgram tiny_lp() {
  ConicProgram p;
  p.num_nonneg = 2;
  p.c = {1.0, 2.0};
  p.add_row({{{0, 1.0}, {1, 1.0}}, 1.0, "sum"});
  return p;
}

// min X11 + X22  s.t.  X12 = 1, X psd   ->  2 at X = ones
ConicProgram tiny_sdp() {
  ConicProgram p;
  p.psd_dims = {2};
  p.c.assign(p.total_vars(), 0.0);
  p.c[p.svec_index(0, 0, 0)] = 1.0;
  p.c[p.svec_index(0, 1, 1)] = 1.0;
  p.add_row({{{p.svec_index(0, 0, 1), 1.0 / ConicProgram::svec_scale(0, 1)}}, 1.0, "offdiag"});
  return p;
}

}  // namespace

TEST_CASE("LP with known optimum") {
  Solution sol = solve(tiny_lp());
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.v[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sol.v[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
}

TEST_CASE("SDP with known optimum") {
  Solution sol = solve(tiny_sdp());
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(2.0).epsilon(1e-7));
  // recover X11 and X12 from the scaled svec coordinates
  ConicProgram p = tiny_sdp();
  CHECK(sol.v[p.svec_index(0, 0, 0)] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sol.v[p.svec_index(0, 0, 1)] / ConicProgram::svec_scale(0, 1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("free variables participate in equalities") {
  // min x  s.t.  f + x = 3, f = 1, x >= 0  ->  2
  ConicProgram p;
  p.num_free = 1;
  p.num_nonneg = 1;
  p.c = {0.0, 1.0};
  p.add_row({{{0, 1.0}, {1, 1.0}}, 3.0, "link"});
  p.add_row({{{0, 1.0}}, 1.0, "pin"});
  Solution sol = solve(p);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(sol.v[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("optimal status certifies residuals and gap") {
  for (const ConicProgram& p : {tiny_lp(), tiny_sdp()}) {
    Solution sol = solve(p);
    REQUIRE(sol.status == SolveStatus::optimal);
    CHECK(sol.primal_residual <= 1e-7);
    CHECK(sol.dual_residual <= 1e-7);
    CHECK(sol.rel_gap <= 1e-7);
    // weak duality at the reported point
    CHECK(sol.dual_objective <= sol.primal_objective + 1e-6);
  }
}

TEST_CASE("primal infeasibility is detected") {
  ConicProgram p;
  p.num_nonneg = 1;
  p.c = {0.0};
  p.add_row({{{0, 1.0}}, -1.0, "neg"});
  Solution sol = solve(p);
  CHECK(sol.status == SolveStatus::primal_infeasible);
}

TEST_CASE("dual infeasibility (unbounded primal) is detected") {
  ConicProgram p;
  p.num_nonneg = 2;
  p.c = {-1.0, 0.0};
  p.add_row({{{1, 1.0}}, 1.0, "pin"});
  Solution sol = solve(p);
  CHECK(sol.status == SolveStatus::dual_infeasible);
}

TEST_CASE("iteration cap is honored") {
  SolveSettings st;
  st.max_iter = 1;
  Solution sol = solve(tiny_sdp(), st);
  CHECK(sol.iterations <= 1);
  CHECK(sol.status != SolveStatus::optimal);
}

TEST_CASE("solves are bitwise deterministic") {
  Solution a = solve(tiny_sdp());
  Solution b = solve(tiny_sdp());
  CHECK(a.primal_objective == b.primal_objective);
  CHECK(a.v == b.v);
  CHECK(a.z == b.z);
  SolveSettings serial;
  serial.parallel = false;
  Solution c = solve(tiny_sdp(), serial);
  CHECK(a.v == c.v);
}

TEST_CASE("status names") {
  CHECK(status_name(SolveStatus::optimal) == "optimal");
  CHECK(status_name(SolveStatus::primal_infeasible) == "primal-infeasible");
  CHECK(status_name(SolveStatus::dual_infeasible) == "dual-infeasible");
}
