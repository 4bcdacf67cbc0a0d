#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orx/generate.hpp"
#include "orx/relax.hpp"
#include "orx/sdpa.hpp"
#include "orx/solver.hpp"

using namespace orx;

namespace {

PopInstance amgm() {
  PopInstance pop;
  pop.n = 3;
  pop.f = Poly::variable(3, 0) + Poly::variable(3, 1) + Poly::variable(3, 2);
  Poly prod = Poly::variable(3, 0) * Poly::variable(3, 1) * Poly::variable(3, 2) - Poly::constant(3, 1.0);
  pop.constraints.push_back({prod, BoundFlag::none, 0.0, -1});
  pop.constraints.push_back({PopInstance::simplex_poly(3, 3.0, {0, 1, 2}), BoundFlag::simplex, 3.0, -1});
  return pop;
}

void roundtrip(const ConicProgram& p) {
  std::string text = export_sdpa(p);
  ConicProgram q = import_sdpa(text);
  CHECK(structurally_equal(p, q));
}

}  // namespace

TEST_CASE("round-trip through .dat-s is structural identity for every builder") {
  std::vector<PopInstance> pops = {amgm(), gen_qcqp_dense(3, 2, 1, 5), gen_qcqp_sparse(5, 2, 3, 1, 7)};
  for (const PopInstance& pop : pops) {
    roundtrip(build_polya_dense(pop, 1, 2).prog);
    roundtrip(build_polya_dense(pop, 1, 1).prog);
    roundtrip(build_handelman_dense(pop, 3, 2).prog);
    roundtrip(build_putinar_dense(pop, 2).prog);
    roundtrip(build_putinar_dense(pop, 2, true).prog);
    roundtrip(build_polya_sparse(pop, 1, 2, 2).prog);
    roundtrip(build_handelman_sparse(pop, 3, 1).prog);
    roundtrip(build_putinar_sparse(pop, 2).prog);
  }
}

TEST_CASE("export is byte deterministic") {
  PopInstance pop = gen_qcqp_sparse(5, 2, 3, 1, 7);
  ConicProgram p = build_polya_sparse(pop, 1, 2, 2).prog;
  CHECK(export_sdpa(p) == export_sdpa(p));
  CHECK(export_sdpa(build_polya_sparse(pop, 1, 2, 2).prog) == export_sdpa(p));
}

TEST_CASE("free variables survive the nonnegative split") {
  ConicProgram p;
  p.num_free = 1;
  p.num_nonneg = 1;
  p.c = {-1.0, 2.0};
  p.add_row({{{0, 1.0}, {1, 3.0}}, 4.0, "r"});
  ConicProgram q = import_sdpa(export_sdpa(p));
  REQUIRE(structurally_equal(p, q));
  CHECK(q.num_free == 1);
}

TEST_CASE("hand-written .dat-s imports to the expected program") {
  // min X11 + X22  s.t.  2 X12 = 1 on a single 2x2 PSD block (F0 = -c)
  std::string text =
      "1\n"
      "1\n"
      "2\n"
      "1.0\n"
      "0 1 1 1 -1.0\n"
      "0 1 2 2 -1.0\n"
      "1 1 1 2 1.0\n";
  ConicProgram p = import_sdpa(text);
  CHECK(p.num_free == 0);
  CHECK(p.num_nonneg == 0);
  REQUIRE(p.psd_dims == std::vector<int>{2});
  REQUIRE(p.rows.size() == 1);
  CHECK(p.rows[0].rhs == 1.0);
  // a symmetric off-diagonal entry A12 = 1 counts both triangles, so the svec
  // coefficient is sqrt(2) * A12
  REQUIRE(p.rows[0].coeffs.size() == 1);
  CHECK(p.rows[0].coeffs[0].first == p.svec_index(0, 0, 1));
  CHECK(p.rows[0].coeffs[0].second == doctest::Approx(ConicProgram::svec_scale(0, 1)).epsilon(1e-12));
  Solution sol = solve(p);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.primal_objective == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("imported program solves to the same value") {
  ConicProgram p = build_handelman_dense(amgm(), 4, 1).prog;
  ConicProgram q = import_sdpa(export_sdpa(p));
  Solution a = solve(p), b = solve(q);
  REQUIRE(a.status == SolveStatus::optimal);
  REQUIRE(b.status == SolveStatus::optimal);
  CHECK(a.primal_objective == doctest::Approx(b.primal_objective).epsilon(1e-8));
}

TEST_CASE("structurally_equal detects differences") {
  ConicProgram p;
  p.num_nonneg = 2;
  p.c = {1.0, 2.0};
  p.add_row({{{0, 1.0}, {1, 1.0}}, 1.0, ""});
  ConicProgram q = p;
  CHECK(structurally_equal(p, q));
  q.c[1] = 3.0;
  CHECK(!structurally_equal(p, q));
  ConicProgram r = p;
  r.rows[0].rhs = 2.0;
  CHECK(!structurally_equal(p, r));
}
