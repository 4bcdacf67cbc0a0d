#pragma once

#include <string>
#include <vector>

#include "orx/conic.hpp"

namespace orx {

struct SolveSettings {
  double tol_feas = 1e-8;
  double tol_gap = 1e-8;
  int max_iter = 200;
  double step_fraction = 0.98;
  bool deterministic = true;  // fixed reduction order; results are scheduling-independent either way
  bool parallel = true;       // use the OpenMP Schur kernel when available
  bool verbose = false;
};

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, max_iter, numerical_failure };

std::string status_name(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<double> v;  // primal values, full variable layout (already divided by tau)
  std::vector<double> z;  // dual multiplier per equality row
  std::vector<double> s;  // dual slack on cone coordinates (aligned with v, zeros on free part)
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double rel_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

Solution solve(const ConicProgram& prog, const SolveSettings& settings = {});

}  // namespace orx
