#include "orx/generate.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace orx {

namespace {

void add_equality(PopInstance& pop, const Poly& h, BoundFlag flag = BoundFlag::none, double R = 0.0) {
  int a = (int)pop.constraints.size();
  pop.constraints.push_back({h, flag, R, a + 1});
  pop.constraints.push_back({h * -1.0, BoundFlag::none, 0.0, a});
}

Poly simplex_eq_half(int n, double R, const std::vector<int>& support) {
  return PopInstance::simplex_poly(n, R, support);
}

std::vector<int> all_vars(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

Poly random_poly(Rng& rng, int n, const std::vector<Exp>& support) {
  Poly p = Poly::constant(n, 0.0);
  for (const Exp& a : support) p = p + Poly::monomial(n, a, rng.uniform_pm());
  return p;
}

Poly quadratic_form(int n, const std::vector<std::vector<double>>& A, double diag_shift = 0.0) {
  Poly f = Poly::constant(n, 0.0);
  for (int i = 0; i < n; ++i) {
    Exp e(n, 0);
    e[i] = 2;
    f = f + Poly::monomial(n, e, A[i][i] + diag_shift);
    for (int j = i + 1; j < n; ++j) {
      Exp c(n, 0);
      c[i] = c[j] = 1;
      f = f + Poly::monomial(n, c, A[i][j] + A[j][i]);
    }
  }
  return f;
}

void check_symmetric(const std::vector<std::vector<double>>& A, const char* who) {
  const int n = (int)A.size();
  for (int i = 0; i < n; ++i) {
    if ((int)A[i].size() != n) throw ConfigError(std::string(who) + ": matrix is not square");
    for (int j = 0; j < n; ++j) {
      if (A[i][j] != A[j][i]) throw ConfigError(std::string(who) + ": matrix is not symmetric");
    }
  }
}

}  // namespace

std::vector<std::vector<double>> adjacency_cycle(int n) {
  if (n < 3) throw ConfigError("adjacency_cycle: need n >= 3");
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) A[i][(i + 1) % n] = A[(i + 1) % n][i] = 1.0;
  return A;
}

std::vector<std::vector<double>> adjacency_path(int n) {
  if (n < 1) throw ConfigError("adjacency_path: need n >= 1");
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (int i = 0; i + 1 < n; ++i) A[i][i + 1] = A[i + 1][i] = 1.0;
  return A;
}

std::vector<std::vector<double>> adjacency_complete(int n) {
  if (n < 1) throw ConfigError("adjacency_complete: need n >= 1");
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = i == j ? 0.0 : 1.0;
  }
  return A;
}

PopInstance gen_stability(const std::vector<std::vector<double>>& adj, bool unit_ball) {
  check_symmetric(adj, "gen_stability");
  const int n = (int)adj.size();
  PopInstance pop;
  pop.n = n;
  pop.f = quadratic_form(n, adj, 1.0);  // x'(A+I)x
  add_equality(pop, simplex_eq_half(n, 1.0, all_vars(n)), BoundFlag::simplex, 1.0);
  if (unit_ball) {
    Poly ball = Poly::constant(n, 1.0);
    for (int j = 0; j < n; ++j) ball = ball - Poly::variable(n, j) * Poly::variable(n, j);
    pop.constraints.push_back({ball, BoundFlag::ball, 1.0, -1});
  }
  return pop;
}

PopInstance gen_copositivity(const std::vector<std::vector<double>>& A) {
  check_symmetric(A, "gen_copositivity");
  const int n = (int)A.size();
  PopInstance pop;
  pop.n = n;
  pop.f = quadratic_form(n, A);
  add_equality(pop, simplex_eq_half(n, 1.0, all_vars(n)), BoundFlag::simplex, 1.0);
  return pop;
}

PopInstance gen_copositivity_random(int n, unsigned long long seed) {
  if (n < 1) throw ConfigError("gen_copositivity_random: need n >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> B(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) B[i][j] = rng.uniform_pm();
  }
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = 0.5 * (B[i][j] + B[j][i]);
  }
  return gen_copositivity(A);
}

PopInstance gen_maxcut(const std::vector<std::vector<double>>& W) {
  check_symmetric(W, "gen_maxcut");
  const int n = (int)W.size();
  PopInstance pop;
  pop.n = n;
  // min -x'W(e - x)
  Poly f = Poly::constant(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      row += W[i][j];
      if (W[i][j] != 0.0) {
        Exp c(n, 0);
        c[i] += 1;
        c[j] += 1;
        f = f + Poly::monomial(n, c, W[i][j]);
      }
    }
    f = f - Poly::variable(n, i) * row;
  }
  pop.f = f;
  for (int j = 0; j < n; ++j) {
    add_equality(pop, Poly::variable(n, j) - Poly::variable(n, j) * Poly::variable(n, j));
  }
  pop.constraints.push_back({simplex_eq_half(n, (double)n, all_vars(n)), BoundFlag::simplex, (double)n, -1});
  return pop;
}

PopInstance gen_form(int n, int d, unsigned long long seed) {
  if (n < 1 || d < 1) throw ConfigError("gen_form: need n >= 1, d >= 1");
  Rng rng(seed);
  std::vector<Exp> top;
  for (const Exp& a : monomials_up_to(n, 2 * d)) {
    if (total_degree(a) == 2 * d) top.push_back(a);
  }
  PopInstance pop;
  pop.n = n;
  pop.f = random_poly(rng, n, top);
  add_equality(pop, simplex_eq_half(n, 1.0, all_vars(n)), BoundFlag::simplex, 1.0);
  return pop;
}

PopInstance gen_boolean(int n, int d, unsigned long long seed) {
  if (n < 1 || d < 1) throw ConfigError("gen_boolean: need n >= 1, d >= 1");
  Rng rng(seed);
  PopInstance pop;
  pop.n = n;
  pop.f = random_poly(rng, n, monomials_up_to(n, 2 * d));
  for (int j = 0; j < n; ++j) {
    add_equality(pop, Poly::variable(n, j) - Poly::variable(n, j) * Poly::variable(n, j));
  }
  pop.constraints.push_back({simplex_eq_half(n, (double)n, all_vars(n)), BoundFlag::simplex, (double)n, -1});
  return pop;
}

PopInstance gen_pmsv(int m, unsigned long long seed) {
  if (m < 1) throw ConfigError("gen_pmsv: need m >= 1");
  Rng rng(seed);
  const int n = m * m;
  auto draw = [&](Eigen::MatrixXd& X) {
    X.resize(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) X(i, j) = rng.uniform_pm();
    }
  };
  Eigen::MatrixXd A, B, C, D;
  draw(A);
  draw(B);
  draw(C);
  draw(D);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int bi = 0; bi < m; ++bi) {
    for (int bj = 0; bj <= bi; ++bj) {
      Eigen::MatrixXd blk;
      if (bi == bj) blk = D;
      else {
        blk = C;
        for (int t = 0; t < bi - bj - 1; ++t) blk = blk * A;
        blk = blk * B;
      }
      M.block(bi * m, bj * m, m, m) = blk;
    }
  }
  Eigen::MatrixXd Q = M.transpose() * M;

  PopInstance pop;
  pop.n = n;
  std::vector<std::vector<double>> Qv(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) Qv[i][j] = -Q(i, j);  // max -> min
  }
  pop.f = quadratic_form(n, Qv);
  Poly ball = Poly::constant(n, 1.0);
  for (int j = 0; j < n; ++j) ball = ball - Poly::variable(n, j) * Poly::variable(n, j);
  add_equality(pop, ball, BoundFlag::ball, 1.0);
  return pop;
}

PopInstance gen_qcqp_dense(int n, int m_ineq, int m_eq, unsigned long long seed, std::vector<double>* anchor) {
  if (n < 1 || m_ineq < 2 || m_eq < 0) throw ConfigError("gen_qcqp_dense: need n >= 1, m_ineq >= 2, m_eq >= 0");
  Rng rng(seed);
  // a uniform on the simplex: first n coordinates of a Dirichlet(1,...,1) on n+1
  std::vector<double> a(n);
  {
    double total = 0.0;
    std::vector<double> e(n + 1);
    for (int j = 0; j <= n; ++j) {
      e[j] = -std::log(1.0 - rng.uniform());
      total += e[j];
    }
    for (int j = 0; j < n; ++j) a[j] = e[j] / total;
  }
  if (anchor) *anchor = a;

  const std::vector<Exp> quad = monomials_up_to(n, 2);
  PopInstance pop;
  pop.n = n;
  pop.f = random_poly(rng, n, quad);
  pop.constraints.push_back({simplex_eq_half(n, 1.0, all_vars(n)), BoundFlag::simplex, 1.0, -1});
  // m_ineq counts the simplex constraint and the implicit g = 1
  for (int i = 0; i < m_ineq - 2; ++i) {
    Poly g = random_poly(rng, n, quad);
    g = g + Poly::constant(n, 0.125 - g.evaluate(a));
    pop.constraints.push_back({g, BoundFlag::none, 0.0, -1});
  }
  for (int i = 0; i < m_eq; ++i) {
    Poly h = random_poly(rng, n, quad);
    h = h - Poly::constant(n, h.evaluate(a));
    add_equality(pop, h);
  }
  return pop;
}

PopInstance gen_qcqp_sparse(int n, int u, int m_ineq, int m_eq, unsigned long long seed, std::vector<double>* anchor) {
  if (n < 2 || u < 1 || u >= n) throw ConfigError("gen_qcqp_sparse: need n >= 2, 1 <= u < n");
  const int p = n / u + 1;
  if (m_ineq < p || m_eq < 0) throw ConfigError("gen_qcqp_sparse: need m_ineq >= p (one simplex bound per clique)");
  std::vector<std::vector<int>> I(p);
  for (int c = 0; c < p; ++c) {
    int lo = c == 0 ? 0 : u * c - 1;
    int hi = c == p - 1 ? n - 1 : u * (c + 1) - 1;
    for (int j = lo; j <= hi && j < n; ++j) I[c].push_back(j);
  }

  Rng rng(seed);
  PopInstance pop;
  pop.n = n;
  pop.f = Poly::constant(n, 0.0);
  for (int c = 0; c < p; ++c) pop.f = pop.f + random_poly(rng, n, monomials_up_to_clique(n, I[c], 2));

  // anchor feasible for every clique simplex
  std::vector<double> a(n);
  {
    std::vector<double> raw(n);
    for (int j = 0; j < n; ++j) raw[j] = rng.uniform();
    double t = 1.0;
    for (int c = 0; c < p; ++c) {
      double s = 0.0;
      for (int j : I[c]) s += raw[j];
      t = std::max(t, s);
    }
    for (int j = 0; j < n; ++j) a[j] = raw[j] / t;
  }
  if (anchor) *anchor = a;

  for (int c = 0; c < p; ++c) {
    pop.constraints.push_back({simplex_eq_half(n, 1.0, I[c]), BoundFlag::simplex, 1.0, -1});
  }
  const int extra = m_ineq - p;
  for (int i = 0; i < extra; ++i) {
    int c = i % p;  // round-robin assignment over cliques
    Poly g = random_poly(rng, n, monomials_up_to_clique(n, I[c], 2));
    g = g + Poly::constant(n, 0.125 - g.evaluate(a));
    pop.constraints.push_back({g, BoundFlag::none, 0.0, -1});
  }
  for (int i = 0; i < m_eq; ++i) {
    int c = i % p;
    Poly h = random_poly(rng, n, monomials_up_to_clique(n, I[c], 2));
    h = h - Poly::constant(n, h.evaluate(a));
    add_equality(pop, h);
  }
  pop.cliques = CliqueSpec{I, {}};
  return pop;
}

}  // namespace orx
