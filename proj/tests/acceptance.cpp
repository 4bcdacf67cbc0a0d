// End-to-end acceptance checks; prints one pass/fail line per criterion.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orx/extract.hpp"
#include "orx/generate.hpp"
#include "orx/indexsets.hpp"
#include "orx/relax.hpp"
#include "orx/sdpa.hpp"
#include "orx/solver.hpp"
#include "orx/sparsity.hpp"

using namespace orx;

namespace {

std::vector<Solution> all_sols;
int failures = 0;

Solution rsolve(const ConicProgram& prog) {
  Solution sol = solve(prog);
  all_sols.push_back(sol);
  return sol;
}

// a solve whose iterate is converged even when the strict optimality
// certificate is not met
bool trusted(const Solution& sol) {
  if (sol.status == SolveStatus::optimal) return true;
  return sol.status == SolveStatus::numerical_failure && sol.primal_residual <= 1e-5 &&
         sol.rel_gap <= 1e-4;
}

void report(int idx, const char* what, bool pass) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, what);
  if (!pass) ++failures;
}

PopInstance amgm() {
  PopInstance pop;
  pop.n = 3;
  pop.f = Poly::variable(3, 0) + Poly::variable(3, 1) + Poly::variable(3, 2);
  Poly prod = Poly::variable(3, 0) * Poly::variable(3, 1) * Poly::variable(3, 2) - Poly::constant(3, 1.0);
  pop.constraints.push_back({prod, BoundFlag::none, 0.0, -1});
  pop.constraints.push_back({PopInstance::simplex_poly(3, 3.0, {0, 1, 2}), BoundFlag::simplex, 3.0, -1});
  return pop;
}

bool near(double v, double want, double tol) { return std::abs(v - want) <= tol; }

// ---- criterion 4 oracle -----------------------------------------------------

bool feasible(const PopInstance& pop, const std::vector<double>& x) {
  for (const auto& c : pop.constraints) {
    if (c.g.evaluate(x) < -1e-9) return false;
  }
  return true;
}

void grid_min(const PopInstance& pop, int j, double rem, std::vector<double>& x, double& best,
              std::vector<double>& arg) {
  const double h = 0.02;
  if (j == pop.n) {
    if (!feasible(pop, x)) return;
    double v = pop.f.evaluate(x);
    if (v < best) {
      best = v;
      arg = x;
    }
    return;
  }
  for (double t = 0.0; t <= rem + 1e-12; t += h) {
    x[j] = t;
    grid_min(pop, j + 1, rem - t, x, best, arg);
  }
  x[j] = 0.0;
}

double refine(const PopInstance& pop, std::vector<double> x, double fx) {
  double h = 0.02;
  while (h > 1e-7) {
    bool moved = false;
    for (int j = 0; j < pop.n; ++j) {
      for (double d : {h, -h}) {
        std::vector<double> y = x;
        y[j] += d;
        if (y[j] < 0.0) continue;
        if (!feasible(pop, y)) continue;
        double fy = pop.f.evaluate(y);
        if (fy < fx - 1e-15) {
          x = y;
          fx = fy;
          moved = true;
        }
      }
    }
    if (!moved) h *= 0.5;
  }
  return fx;
}

double oracle(const PopInstance& pop, const std::vector<double>& anchor) {
  std::vector<double> x(pop.n, 0.0), arg = anchor;
  double best = pop.f.evaluate(anchor);
  grid_min(pop, 0, 1.0, x, best, arg);
  return refine(pop, arg, best);
}

}  // namespace

// ---- criteria ---------------------------------------------------------------

static void criterion1() {
  PopInstance pop = amgm();
  bool ok = true;
  for (int s = 1; s <= 8; ++s) {
    Solution sol = rsolve(build_polya_dense(pop, 0, s).prog);
    ok = ok && trusted(sol) && near(sol.primal_objective, 0.0, 1e-3);
  }
  for (int s = 4; s <= 8; ++s) {
    Solution sol = rsolve(build_polya_dense(pop, 2, s).prog);
    ok = ok && trusted(sol) && near(sol.primal_objective, 3.0, 2e-3);
  }
  Solution s23 = rsolve(build_polya_dense(pop, 2, 3).prog);
  ok = ok && trusted(s23) && near(s23.primal_objective, 0.5, 2e-2);
  Solution s41 = rsolve(build_polya_dense(pop, 4, 1).prog);
  ok = ok && trusted(s41) && near(s41.primal_objective, 1.44, 2e-2);
  report(1, "AM-GM bound table cells match the reference values", ok);
}

static void criterion2() {
  RatPoly x = RatPoly::variable(1, 0);
  RatPoly x2 = x * x;
  RatPoly one = RatPoly::constant(1, Rational(1));
  bool polya = (one + x2).pow(2) * (x2 - RatPoly::constant(1, Rational(3, 2))).pow(2) ==
               x2.pow(4) + (x2 * x2 + x2 * Rational(15, 4) + RatPoly::constant(1, Rational(9, 4))) * (one - x2);
  RatPoly g = one - x2;
  bool han = (x2 - RatPoly::constant(1, Rational(3, 2))).pow(2) ==
             RatPoly::constant(1, Rational(1, 4)) + g + g.pow(2);
  report(2, "certificate identities hold in exact rational arithmetic", polya && han);
}

static void criterion3() {
  std::vector<std::vector<Exp>> want = {
      {{0, 0}, {2, 0}}, {{1, 0}}, {{0, 1}}, {{2, 0}, {0, 2}}, {{1, 1}}, {},
  };
  bool ok = cover_blocks(2, 2, 2).blocks == want;
  ok = ok && cover_blocks_clique(2, {0}, 2, 2).blocks ==
                 std::vector<std::vector<Exp>>{{{0, 0}, {2, 0}}, {{1, 0}}, {}};
  ok = ok && cover_blocks_clique(2, {1}, 2, 2).blocks ==
                 std::vector<std::vector<Exp>>{{{0, 0}, {0, 2}}, {{0, 1}}, {}};
  report(3, "monomial cover blocks reproduce the worked fixtures", ok);
}

static void criterion4() {
  bool ok = true;
  int checked = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    int n = 2 + seed % 3;
    std::vector<double> anchor;
    PopInstance pop = gen_qcqp_dense(n, 3, 0, (unsigned long long)seed, &anchor);
    double fstar = oracle(pop, anchor);
    std::vector<Relaxation> rels;
    rels.push_back(build_polya_dense(pop, 1, 2));
    rels.push_back(build_handelman_dense(pop, 3, 1));
    rels.push_back(build_putinar_dense(pop, 2));
    PopInstance sp = pop;
    sp.cliques = CliqueSpec{{std::vector<int>(pop.n)}, {}};
    for (int j = 0; j < pop.n; ++j) sp.cliques->cliques[0][j] = j;
    rels.push_back(build_polya_sparse(sp, 1, 2, 2));
    rels.push_back(build_handelman_sparse(sp, 3, 1));
    rels.push_back(build_putinar_sparse(sp, 2));
    for (const Relaxation& rel : rels) {
      Solution sol = rsolve(rel.prog);
      if (sol.status == SolveStatus::optimal) {
        ++checked;
        if (sol.primal_objective > fstar + 1e-6) ok = false;
      }
    }
  }
  ok = ok && checked >= 30;
  report(4, "all computed bounds stay below the oracle optimum", ok);
}

static void criterion5() {
  PopInstance pop = amgm();
  bool ok = true;
  double prev = -1e300;
  for (int k = 0; k <= 4; ++k) {
    Solution sol = rsolve(build_polya_dense(pop, k, 1).prog);
    ok = ok && trusted(sol) && sol.primal_objective >= prev - 1e-6;
    prev = sol.primal_objective;
  }
  for (int k = 0; k <= 2; ++k) {
    Solution lp = rsolve(build_polya_dense(pop, k, 1).prog);
    for (int s : {2, 4}) {
      Solution sdp = rsolve(build_polya_dense(pop, k, s).prog);
      ok = ok && trusted(lp) && trusted(sdp) && lp.primal_objective <= sdp.primal_objective + 1e-6;
    }
  }
  prev = -1e300;
  for (int k = 1; k <= 4; ++k) {
    Solution sol = rsolve(build_handelman_dense(pop, k, 1).prog);
    ok = ok && trusted(sol) && sol.primal_objective >= prev - 1e-6;
    prev = sol.primal_objective;
  }
  report(5, "hierarchies are monotone in the order and the width", ok);
}

static void criterion6() {
  bool ok = true;
  for (int seed = 1; seed <= 5; ++seed) {
    PopInstance pop = gen_copositivity_random(3, (unsigned long long)seed);
    PopInstance sp = pop;
    sp.cliques = CliqueSpec{{{0, 1, 2}}, {}};
    auto agree = [&](const Relaxation& dense, const Relaxation& sparse) {
      Solution a = rsolve(dense.prog), b = rsolve(sparse.prog);
      return trusted(a) && trusted(b) && near(a.primal_objective, b.primal_objective, 1e-6);
    };
    ok = ok && agree(build_polya_dense(pop, 1, 2), build_polya_sparse(sp, 1, 2, 2));
    ok = ok && agree(build_handelman_dense(pop, 3, 1), build_handelman_sparse(sp, 3, 1));
    ok = ok && agree(build_putinar_dense(pop, 2), build_putinar_sparse(sp, 2));
  }
  report(6, "sparse builders collapse to the dense ones on a single clique", ok);
}

static void criterion7() {
  PopInstance pop = amgm();
  Relaxation rel = build_polya_dense(pop, 2, 4);
  Solution sol = rsolve(rel.prog);
  bool ok = sol.status == SolveStatus::optimal;
  if (ok) {
    Certificate cert = make_certificate(rel, sol);
    MinimizerResult mr = extract_minimizer(pop, cert, 1e-2);
    ok = mr.ok && mr.report.pass && mr.xstar.size() == 3;
    for (double xi : mr.xstar) ok = ok && near(xi, 1.0, 1e-2);
  }
  // 1-D moment-side check: 0.5 delta_0.2 + 0.5 delta_0.8
  auto mom = [](int j) { return 0.5 * std::pow(0.2, j) + 0.5 * std::pow(0.8, j); };
  Eigen::MatrixXd M(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) M(i, j) = mom(i + j);
  }
  ExtractResult er = extract_atoms(M, {{0}, {1}, {2}}, 1, {0}, MatrixKind::moment);
  bool atoms_ok = er.ok && er.atoms.size() == 2;
  if (atoms_ok) {
    std::vector<double> pts = {er.atoms[0](0), er.atoms[1](0)};
    std::sort(pts.begin(), pts.end());
    atoms_ok = near(pts[0], 0.2, 1e-6) && near(pts[1], 0.8, 1e-6);
  }
  report(7, "minimizer extraction recovers the known atoms", ok && atoms_ok);
}

static void criterion8() {
  struct Case {
    const char* name;
    std::vector<std::vector<double>> adj;
    int alpha;
  };
  std::vector<Case> cases = {{"C3", adjacency_cycle(3), 1},
                             {"C5", adjacency_cycle(5), 2},
                             {"P3", adjacency_path(3), 2}};
  bool ok = true;
  for (const Case& c : cases) {
    PopInstance pop = gen_stability(c.adj);
    for (int k : {0, 1}) {
      Solution sol = rsolve(build_polya_dense(pop, k, pop.n + 1).prog);
      ok = ok && trusted(sol) && (int)std::lround(1.0 / sol.primal_objective) == c.alpha;
    }
  }
  report(8, "stability numbers of C3, C5, P3 are recovered exactly", ok);
}

static void criterion9() {
  std::vector<PopInstance> pops = {amgm(), gen_qcqp_dense(3, 3, 1, 5), gen_qcqp_sparse(5, 2, 3, 1, 7)};
  bool ok = true;
  for (const PopInstance& pop : pops) {
    std::vector<ConicProgram> progs = {
        build_polya_dense(pop, 1, 2).prog,    build_polya_dense(pop, 1, 1).prog,
        build_handelman_dense(pop, 3, 2).prog, build_putinar_dense(pop, 2).prog,
        build_polya_sparse(pop, 1, 2, 2).prog, build_handelman_sparse(pop, 3, 1).prog,
        build_putinar_sparse(pop, 2).prog,
    };
    for (const ConicProgram& p : progs) {
      std::string text = export_sdpa(p);
      ok = ok && structurally_equal(p, import_sdpa(text)) && text == export_sdpa(p);
    }
  }
  report(9, "SDPA export/import is a structural round trip and byte deterministic", ok);
}

static void criterion10() {
  bool ok = true;
  int optimal = 0;
  for (const Solution& sol : all_sols) {
    if (sol.status != SolveStatus::optimal) continue;
    ++optimal;
    ok = ok && sol.primal_residual <= 1e-7 && sol.dual_residual <= 1e-7 && sol.rel_gap <= 1e-7;
  }
  ok = ok && optimal > 0;
  report(10, "every optimal status is certified by residuals and gap <= 1e-7", ok);
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  return failures == 0 ? 0 : 1;
}
