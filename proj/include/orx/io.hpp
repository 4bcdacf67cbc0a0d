#pragma once

#include <string>

#include "orx/conic.hpp"
#include "orx/pop.hpp"

namespace orx {

// Problem JSON: {n, objective: [{coeff, expo}], constraints: [{poly, kind:
// "ineq"|"eq", flag: "simplex"|"ball"|"none", R}], cliques?}.  Equalities load
// as paired inequalities (eq_partner) and save back as a single "eq" entry.
PopInstance parse_problem(const std::string& text);
PopInstance load_problem(const std::string& path);
std::string problem_to_json(const PopInstance& pop);
void save_problem(const PopInstance& pop, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// solve-report statistics matching the result-table columns
struct RelaxStats {
  int nmat = 0;   // PSD matrix variables
  int msize = 0;  // largest PSD block size
  int nscal = 0;  // scalar variables (free + nonnegative)
  int naff = 0;   // affine constraints
};

RelaxStats stats_of(const ConicProgram& prog);

}  // namespace orx
