#pragma once

#include <random>
#include <vector>

#include "orx/pop.hpp"

namespace orx {

// Deterministic cross-platform uniform source (mt19937_64 bit stream; the
// standard distributions are not portable across implementations).
class Rng {
 public:
  explicit Rng(unsigned long long seed) : eng_(seed) {}
  double uniform() { return (double)(eng_() >> 11) * 0x1.0p-53; }          // [0,1)
  double uniform_pm() { return 2.0 * uniform() - 1.0; }                     // (-1,1)

 private:
  std::mt19937_64 eng_;
};

// Graph helpers for the stability-number family.
std::vector<std::vector<double>> adjacency_cycle(int n);
std::vector<std::vector<double>> adjacency_path(int n);
std::vector<std::vector<double>> adjacency_complete(int n);

// min x'(A+I)x on the simplex (equality emitted as an inequality pair); the
// optimum is 1/alpha(G).  unit_ball adds the redundant 1 - ||x||^2 >= 0.
PopInstance gen_stability(const std::vector<std::vector<double>>& adj, bool unit_ball = false);

// min x'Ax on the simplex; A copositive iff the optimum is >= 0.
PopInstance gen_copositivity(const std::vector<std::vector<double>>& A);
PopInstance gen_copositivity_random(int n, unsigned long long seed);

// MAXCUT as min -x'W(e-x) over {0,1}^n (x_j(1-x_j) = 0 pairs, simplex R = n).
PopInstance gen_maxcut(const std::vector<std::vector<double>>& W);

// random form of degree 2d minimized on the simplex
PopInstance gen_form(int n, int d, unsigned long long seed);

// random polynomial of degree <= 2d over the boolean hypercube
PopInstance gen_boolean(int n, int d, unsigned long long seed);

// positive maximal singular value: max x'(M'M)x on the unit sphere, n = m^2
PopInstance gen_pmsv(int m, unsigned long long seed);

// dense random QCQP recipe; the feasible anchor a is returned when requested
PopInstance gen_qcqp_dense(int n, int m_ineq, int m_eq, unsigned long long seed,
                           std::vector<double>* anchor = nullptr);

// sparse chain-of-cliques QCQP recipe (clique width u + 1 after overlap)
PopInstance gen_qcqp_sparse(int n, int u, int m_ineq, int m_eq, unsigned long long seed,
                            std::vector<double>* anchor = nullptr);

}  // namespace orx
