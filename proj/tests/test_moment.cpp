#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "orx/moment.hpp"

using namespace orx;

namespace {

// moments of a discrete measure sum_t w_t delta_{p_t}
MomentVector discrete_moments(int n, int t, const std::vector<std::vector<double>>& pts,
                              const std::vector<double>& w) {
  MomentVector y;
  y.n = n;
  y.t = t;
  for (const Exp& a : monomials_up_to(n, t)) {
    double v = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      double m = w[i];
      for (int j = 0; j < n; ++j) {
        for (int e = 0; e < a[j]; ++e) m *= pts[i][j];
      }
      v += m;
    }
    y.values[a] = v;
  }
  return y;
}

}  // namespace

TEST_CASE("riesz is the evaluation functional of a Dirac measure") {
  MomentVector y = discrete_moments(2, 4, {{0.5, 2.0}}, {1.0});
  Poly p = Poly::variable(2, 0) * Poly::variable(2, 1) + Poly::constant(2, 3.0);
  CHECK(riesz(p, y) == doctest::Approx(p.evaluate(std::vector<double>{0.5, 2.0})).epsilon(1e-12));
}

TEST_CASE("riesz is linear") {
  MomentVector y = discrete_moments(2, 4, {{0.3, 0.7}, {1.1, 0.2}}, {0.4, 0.6});
  Poly p = Poly::variable(2, 0).pow(2), q = Poly::variable(2, 1);
  CHECK(riesz(p + q * 2.0, y) == doctest::Approx(riesz(p, y) + 2.0 * riesz(q, y)).epsilon(1e-12));
}

TEST_CASE("moment matrix of a measure is PSD") {
  MomentVector y = discrete_moments(2, 4, {{0.2, 0.9}, {1.5, 0.1}, {0.4, 0.4}}, {0.2, 0.3, 0.5});
  std::vector<Exp> B = monomials_up_to(2, 2);
  Eigen::MatrixXd M = moment_submatrix(B, Poly::constant(2, 1.0), y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  CHECK((M - M.transpose()).norm() == 0.0);
}

TEST_CASE("localizing matrix of a measure supported where h >= 0 is PSD") {
  // h = 1 - x1^2 - x2^2, both atoms inside the disk
  Poly h = Poly::constant(2, 1.0) - Poly::variable(2, 0).pow(2) - Poly::variable(2, 1).pow(2);
  MomentVector y = discrete_moments(2, 4, {{0.2, 0.3}, {0.5, 0.1}}, {0.5, 0.5});
  Eigen::MatrixXd M = moment_submatrix(monomials_up_to(2, 1), h, y);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("moment_submatrix entry formula against brute force") {
  MomentVector y = discrete_moments(2, 6, {{0.8, 1.2}}, {1.0});
  Poly h = Poly::variable(2, 0) * 2.0 + Poly::constant(2, 1.0);
  std::vector<Exp> B = monomials_up_to(2, 2);
  Eigen::MatrixXd M = moment_submatrix(B, h, y);
  for (size_t i = 0; i < B.size(); ++i) {
    for (size_t j = 0; j < B.size(); ++j) {
      double want = 0.0;
      for (const auto& [g, c] : h.terms()) want += c * y.at(exp_add(g, exp_add(B[i], B[j])));
      CHECK(M(i, j) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("localizing_diag equals the diagonal of the full localizer") {
  MomentVector y = discrete_moments(2, 6, {{0.4, 0.6}, {1.0, 0.2}}, {0.7, 0.3});
  Poly h = Poly::constant(2, 2.0) - Poly::variable(2, 0);
  std::vector<Exp> B = monomials_up_to(2, 2);
  Eigen::VectorXd d = localizing_diag(2, h, y);
  Eigen::MatrixXd M = moment_submatrix(B, h, y);
  REQUIRE(d.size() == (int)B.size());
  for (int i = 0; i < d.size(); ++i) CHECK(d(i) == doctest::Approx(M(i, i)).epsilon(1e-12));
}

TEST_CASE("clique-restricted localizing_diag") {
  MomentVector y = discrete_moments(3, 4, {{0.3, 0.5, 0.7}}, {1.0});
  std::vector<int> I = {0, 2};
  Eigen::VectorXd d = localizing_diag(2, Poly::constant(3, 1.0), y, I);
  std::vector<Exp> B = monomials_up_to_clique(3, I, 2);
  REQUIRE(d.size() == (int)B.size());
  for (int i = 0; i < d.size(); ++i) CHECK(d(i) == doctest::Approx(y.at(exp_add(B[i], B[i]))).epsilon(1e-12));
}

TEST_CASE("even-only mode maps full indices to half indices") {
  MomentVector y;
  y.n = 1;
  y.t = 2;
  y.even_only = true;
  y.values[{0}] = 1.0;  // y_0
  y.values[{1}] = 0.5;  // y_2
  y.values[{2}] = 0.3;  // y_4
  CHECK(y.at({2}) == 0.5);
  CHECK(y.at({4}) == 0.3);
  CHECK_THROWS_AS(y.at({1}), ParityError);
  CHECK_THROWS_AS(y.at({6}), CoverageError);
}
