#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "orx/extract.hpp"
#include "orx/generate.hpp"
#include "orx/io.hpp"
#include "orx/relax.hpp"
#include "orx/sdpa.hpp"
#include "orx/solver.hpp"
#include "orx/sparsity.hpp"

namespace {

using namespace orx;

Method parse_method(const std::string& s) {
  if (s == "put") return Method::put;
  if (s == "pol") return Method::pol;
  if (s == "han") return Method::han;
  if (s == "sppol") return Method::sppol;
  if (s == "sphan") return Method::sphan;
  if (s == "spput") return Method::spput;
  throw CLI::ValidationError("--method", "unknown method '" + s + "'");
}

struct SolveArgs {
  std::string file;
  std::string method = "pol";
  int k = 1;
  int s = 1;
  int d = 1;
  double eps = 0.0;
  bool extract = false;
  double tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

Relaxation build(const PopInstance& pop, Method m, const SolveArgs& a) {
  switch (m) {
    case Method::put: return build_putinar_dense(pop, a.k);
    case Method::pol: return build_polya_dense(pop, a.k, a.s, a.eps);
    case Method::han: return build_handelman_dense(pop, a.k, a.s);
    case Method::sppol: return build_polya_sparse(pop, a.k, a.d, a.s);
    case Method::sphan: return build_handelman_sparse(pop, a.k, a.s);
    case Method::spput: return build_putinar_sparse(pop, a.k);
  }
  throw Error("unreachable");
}

int exit_code(SolveStatus st) {
  switch (st) {
    case SolveStatus::optimal: return 0;
    case SolveStatus::primal_infeasible: return 2;
    case SolveStatus::dual_infeasible: return 3;
    default: return 4;
  }
}

int cmd_solve(const SolveArgs& a) {
  PopInstance pop = load_problem(a.file);
  Method m = parse_method(a.method);

  auto t0 = std::chrono::steady_clock::now();
  Relaxation rel = build(pop, m, a);
  for (const std::string& w : rel.map.warnings) std::cerr << "warning: " << w << "\n";

  SolveSettings st;
  st.tol_feas = st.tol_gap = a.tol;
  st.max_iter = a.max_iter;
  st.verbose = a.verbose;
  Solution sol = solve(rel.prog, st);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  RelaxStats rs = stats_of(rel.prog);
  std::printf("method  %s  k=%d s=%d d=%d eps=%g\n", method_name(m).c_str(), a.k, a.s, a.d, a.eps);
  std::printf("status  %s\n", status_name(sol.status).c_str());
  if (sol.status == SolveStatus::dual_infeasible) {
    std::printf("val     inf\n");
  } else if (sol.status != SolveStatus::primal_infeasible) {
    std::printf("val     %.6f\n", sol.primal_objective);
  }
  std::printf("time    %.3f\n", secs);
  std::printf("nmat    %d\n", rs.nmat);
  std::printf("msize   %d\n", rs.msize);
  std::printf("nscal   %d\n", rs.nscal);
  std::printf("naff    %d\n", rs.naff);
  std::printf("iter    %d  pres %.2e  dres %.2e  relgap %.2e\n", sol.iterations,
              sol.primal_residual, sol.dual_residual, sol.rel_gap);

  if (a.extract && (sol.status == SolveStatus::optimal || sol.status == SolveStatus::max_iter ||
                    sol.status == SolveStatus::numerical_failure)) {
    MinimizerResult mr;
    if (m == Method::put || m == Method::spput) {
      mr = extract_moment_side(pop, rel, sol);
    } else {
      Certificate cert = make_certificate(rel, sol);
      mr = m == Method::sppol || m == Method::sphan ? extract_sparse(pop, cert)
                                                    : extract_minimizer(pop, cert);
    }
    if (!mr.ok) {
      std::printf("extract failed: %s\n", mr.message.c_str());
    } else {
      std::printf("xstar  ");
      for (double v : mr.xstar) std::printf(" %.6f", v);
      std::printf("\n");
      std::printf("verify  obj-residual %.2e  constraints %s\n", mr.report.obj_residual,
                  mr.report.pass ? "ok" : "violated");
    }
  }
  return exit_code(sol.status);
}

struct GenArgs {
  std::string family;
  std::string out;
  std::string graph = "cycle";
  int n = 5;
  int d = 2;
  int u = 2;
  int m = 3;
  int m_ineq = 2;
  int m_eq = 1;
  unsigned long long seed = 1;
  bool unit_ball = false;
};

std::vector<std::vector<double>> make_graph(const std::string& kind, int n) {
  if (kind == "cycle") return adjacency_cycle(n);
  if (kind == "path") return adjacency_path(n);
  if (kind == "complete") return adjacency_complete(n);
  throw CLI::ValidationError("--graph", "unknown graph '" + kind + "'");
}

int cmd_generate(const GenArgs& a) {
  PopInstance pop;
  if (a.family == "stability") {
    pop = gen_stability(make_graph(a.graph, a.n), a.unit_ball);
  } else if (a.family == "copositivity") {
    pop = gen_copositivity_random(a.n, a.seed);
  } else if (a.family == "maxcut") {
    pop = gen_maxcut(make_graph(a.graph, a.n));
  } else if (a.family == "form") {
    pop = gen_form(a.n, a.d, a.seed);
  } else if (a.family == "boolean") {
    pop = gen_boolean(a.n, a.d, a.seed);
  } else if (a.family == "pmsv") {
    pop = gen_pmsv(a.m, a.seed);
  } else if (a.family == "qcqp-dense") {
    pop = gen_qcqp_dense(a.n, a.m_ineq, a.m_eq, a.seed);
  } else if (a.family == "qcqp-sparse") {
    pop = gen_qcqp_sparse(a.n, a.u, a.m_ineq, a.m_eq, a.seed);
  } else {
    throw CLI::ValidationError("family", "unknown family '" + a.family + "'");
  }
  std::string text = problem_to_json(pop);
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return 0;
}

int cmd_export(const SolveArgs& a, const std::string& out) {
  PopInstance pop = load_problem(a.file);
  Relaxation rel = build(pop, parse_method(a.method), a);
  std::string text = export_sdpa(rel.prog);
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

int cmd_analyze(const std::string& file) {
  PopInstance pop = load_problem(file);
  CliqueStructure cs = resolve_cliques(pop);
  std::printf("cliques %d\n", cs.p());
  for (int c = 0; c < cs.p(); ++c) {
    std::printf("  I_%d = {", c + 1);
    for (size_t j = 0; j < cs.cliques[c].size(); ++j)
      std::printf("%s%d", j ? "," : "", cs.cliques[c][j] + 1);
    std::printf("}  constraints {");
    for (size_t j = 0; j < cs.assignments[c].size(); ++j)
      std::printf("%s%d", j ? "," : "", cs.assignments[c][j]);
    std::printf("}");
    if (cs.simplex_idx[c])
      std::printf("  bound g_%d (R=%g)", cs.simplex_idx[c], cs.radii[c]);
    std::printf("\n");
  }
  std::printf("RIP     %s\n", rip_holds(cs.cliques) ? "holds" : "fails");
  std::printf("%s", check_assumption(pop, cs).to_string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchies of LP/SDP relaxations for polynomial optimization on the orthant"};
  app.require_subcommand(1);

  SolveArgs sa;
  GenArgs ga;
  std::string export_out;
  std::string analyze_file;

  auto add_method_flags = [&](CLI::App* cmd) {
    cmd->add_option("file", sa.file, "problem JSON file")->required();
    cmd->add_option("--method", sa.method, "put|pol|han|sppol|sphan|spput");
    cmd->add_option("--k", sa.k, "relaxation order");
    cmd->add_option("--s", sa.s, "factor width bound");
    cmd->add_option("--d", sa.d, "sparse link degree");
    cmd->add_option("--eps", sa.eps, "objective perturbation");
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "build and solve a relaxation");
  add_method_flags(solve_cmd);
  solve_cmd->add_flag("--extract", sa.extract, "attempt minimizer extraction");
  solve_cmd->add_option("--tol", sa.tol, "solver tolerance");
  solve_cmd->add_option("--max-iter", sa.max_iter, "iteration cap");
  solve_cmd->add_flag("--verbose", sa.verbose, "per-iteration solver log");

  CLI::App* gen_cmd = app.add_subcommand("generate", "write a benchmark instance");
  gen_cmd->add_option("family", ga.family,
                      "stability|copositivity|maxcut|form|boolean|pmsv|qcqp-dense|qcqp-sparse")
      ->required();
  gen_cmd->add_option("-o,--out", ga.out, "output file (stdout when omitted)");
  gen_cmd->add_option("--graph", ga.graph, "cycle|path|complete");
  gen_cmd->add_option("--n", ga.n, "variables / graph order");
  gen_cmd->add_option("--d", ga.d, "half degree");
  gen_cmd->add_option("--u", ga.u, "sparse chain parameter");
  gen_cmd->add_option("--m", ga.m, "pmsv matrix order");
  gen_cmd->add_option("--m-ineq", ga.m_ineq, "inequality count");
  gen_cmd->add_option("--m-eq", ga.m_eq, "equality count");
  gen_cmd->add_option("--seed", ga.seed, "PRNG seed");
  gen_cmd->add_flag("--unit-ball", ga.unit_ball, "add redundant unit-ball constraint");

  CLI::App* export_cmd = app.add_subcommand("export", "write the relaxation in SDPA .dat-s form");
  add_method_flags(export_cmd);
  export_cmd->add_option("-o,--out", export_out, "output file (stdout when omitted)");

  CLI::App* analyze_cmd = app.add_subcommand("analyze", "report correlative sparsity structure");
  analyze_cmd->add_option("file", analyze_file, "problem JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*gen_cmd) return cmd_generate(ga);
    if (*export_cmd) return cmd_export(sa, export_out);
    if (*analyze_cmd) return cmd_analyze(analyze_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}
