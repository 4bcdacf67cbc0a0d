#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "orx/poly.hpp"

namespace orx {

// Truncated moment sequence.  In even-only mode the stored index alpha stands
// for the even moment y_{2 alpha}; odd moments do not exist.
struct MomentVector {
  int n = 0;
  int t = 0;  // degree bound on stored indices
  bool even_only = false;
  std::map<Exp, double, GradLess> values;

  double at(const Exp& full_index) const {
    Exp key = full_index;
    if (even_only) {
      if (!is_even_exp(full_index)) throw ParityError("odd moment " + exp_to_string(full_index) + " in even-only mode");
      key = exp_half(full_index);
    }
    auto it = values.find(key);
    if (it == values.end()) throw CoverageError("moment " + exp_to_string(full_index) + " not covered");
    return it->second;
  }
};

// L_y(p) = sum_alpha p_alpha y_alpha.
double riesz(const Poly& p, const MomentVector& y);

// M_B(h y) with entry (i,j) = sum_gamma h_gamma y_{gamma + beta_i + beta_j}.
Eigen::MatrixXd moment_submatrix(const std::vector<Exp>& B, const Poly& h, const MomentVector& y);

// diag(M_t(h y)) over N^I_t (or N^n_t), graded-lex.
Eigen::VectorXd localizing_diag(int t, const Poly& h, const MomentVector& y, const std::optional<std::vector<int>>& I = std::nullopt);

}  // namespace orx
