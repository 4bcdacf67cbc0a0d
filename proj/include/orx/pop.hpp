#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orx/poly.hpp"

namespace orx {

enum class BoundFlag { none, simplex, ball };

struct Constraint {
  Poly g;                         // g(x) >= 0 on top of x >= 0
  BoundFlag flag = BoundFlag::none;
  double R = 0.0;                 // radius when flagged
  int eq_partner = -1;            // index of the paired constraint when this is half of an equality
};

// User-declared clique structure (indices 0-based).
struct CliqueSpec {
  std::vector<std::vector<int>> cliques;      // I_c, sorted subsets of [n]
  std::vector<std::vector<int>> assignments;  // J_c, subsets of constraint indices (optional; derived if empty)
};

// min f(x) over x >= 0, g_1 >= 0, ..., g_{m-1} >= 0; the constant constraint
// g_m = 1 is implicit and appended by the relaxation builders.
struct PopInstance {
  int n = 0;
  Poly f;
  std::vector<Constraint> constraints;
  std::optional<CliqueSpec> cliques;

  int m_total() const { return (int)constraints.size() + 1; }  // includes the implicit g_m = 1

  // g_i for i in [m], 1-based as in the hierarchy definitions
  Poly g(int i) const {
    if (i < 1 || i > m_total()) throw Error("constraint index out of range");
    if (i == m_total()) return Poly::constant(n, 1.0);
    return constraints[i - 1].g;
  }
  int d_g(int i) const { return i == m_total() ? 0 : constraints[i - 1].g.degree(); }
  int d_f() const { return f.degree() + 1; }

  // first flagged simplex/ball constraint, 1-based; 0 when absent
  int flagged_bound(BoundFlag which) const {
    for (size_t i = 0; i < constraints.size(); ++i) {
      if (constraints[i].flag == which) return (int)i + 1;
    }
    return 0;
  }

  // simplex polynomial R - sum_j x_j for validation
  static Poly simplex_poly(int n, double R, const std::vector<int>& support) {
    Poly p = Poly::constant(n, R);
    for (int j : support) p = p - Poly::variable(n, j);
    return p;
  }
};

}  // namespace orx
