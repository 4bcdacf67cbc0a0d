#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "orx/pop.hpp"
#include "orx/relax.hpp"
#include "orx/solver.hpp"

namespace orx {

// Weighted-SOS certificate read off a solved relaxation: the bound and one
// Gram matrix per family block (dual slack on the corresponding cone block).
struct Certificate {
  double lambda = 0.0;
  VariableMap map;
  std::vector<Eigen::MatrixXd> gram;  // aligned with map.grams; 1x1 for scalar blocks
  double min_eig = 0.0;               // smallest eigenvalue across all blocks

  bool psd_ok(double tol = 1e-7) const { return min_eig >= -tol; }
};

Certificate make_certificate(const Relaxation& rel, const Solution& sol);

// Sum of the g = 1 family blocks of `clique` (-1 = dense), embedded into the
// full graded-lex basis of its top degree.  The basis is returned alongside.
Eigen::MatrixXd assemble_gram(const Certificate& cert, int clique, std::vector<Exp>& basis);

// Atoms of a certificate Gram matrix live in its null space; atoms of a moment
// matrix live in its range.
enum class MatrixKind { gram, moment };

struct ExtractResult {
  bool ok = false;
  std::string message;                 // failure reason when !ok
  std::vector<Eigen::VectorXd> atoms;  // points in R^n (coordinates outside `vars` are zero)
};

// Henrion-Lasserre multiplication-operator extraction over the monomials in
// `basis` (graded-lex over R^n).  Operators are built for the variables in
// `vars` only; tol is relative to the largest eigenvalue.
ExtractResult extract_atoms(const Eigen::MatrixXd& G, const std::vector<Exp>& basis, int n,
                            const std::vector<int>& vars, MatrixKind kind = MatrixKind::gram,
                            double tol = 1e-4, unsigned long long seed = 20240901ull);

struct VerifyReport {
  bool pass = false;
  bool obj_pass = false;
  double obj_residual = 0.0;        // |f_check(z) - lambda|
  double obj_scale = 0.0;           // ||f_check||_max
  std::vector<double> con_values;   // g_check_i(z)
  std::vector<double> con_scales;   // ||g_check_i||_max
  std::vector<bool> con_pass;
  std::vector<double> xstar;        // z^2 entrywise, filled on pass
};

// Checks |f_check(z) - lambda| <= eps ||f_check||_max and
// g_check_i(z) >= -eps ||g_check_i||_max.  With squared = false the point is
// taken in the original x variables and the raw f, g_i are evaluated instead.
VerifyReport verify_solution(const PopInstance& pop, const Eigen::VectorXd& zstar, double lambda,
                             double epsilon = 1e-2, bool squared = true);

struct MinimizerResult {
  bool ok = false;
  std::string message;
  Eigen::VectorXd zstar;   // empty for the unsquared moment path
  std::vector<double> xstar;
  VerifyReport report;
};

// Dense pipeline: assemble the g = 1 Gram, extract, verify the best atom.
MinimizerResult extract_minimizer(const PopInstance& pop, const Certificate& cert,
                                  double epsilon = 1e-2, double tol = 1e-4);

// Sparse pipeline: per-clique extraction, stitch z*(I_c) = z*^(c) with overlap
// tolerance 1e-4 in x = z^2 space, then verify.
MinimizerResult extract_sparse(const PopInstance& pop, const Certificate& cert,
                               double epsilon = 1e-2, double tol = 1e-4);

// Moment-side pipeline for the unsquared Putinar methods: extracts x* from the
// moment matrix M_k(y) (per clique for spput) and verifies against the raw POP.
MinimizerResult extract_moment_side(const PopInstance& pop, const Relaxation& rel,
                                    const Solution& sol, double epsilon = 1e-2, double tol = 1e-4);

}  // namespace orx
