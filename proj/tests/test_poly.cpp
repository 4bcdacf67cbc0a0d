#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "orx/poly.hpp"

using namespace orx;

TEST_CASE("graded-lex order matches the displayed basis") {
  std::vector<Exp> b = monomials_up_to(2, 2);
  std::vector<Exp> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(b == want);
  CHECK(std::is_sorted(b.begin(), b.end(), GradLess{}));
}

TEST_CASE("monomials_up_to has binomial length and is strictly increasing") {
  for (int n = 1; n <= 4; ++n) {
    for (int d = 0; d <= 4; ++d) {
      std::vector<Exp> b = monomials_up_to(n, d);
      CHECK((long long)b.size() == binom_nd(n, d));
      for (size_t i = 1; i < b.size(); ++i) CHECK(GradLess{}(b[i - 1], b[i]));
    }
  }
}

TEST_CASE("monomials_up_to_clique embeds the clique basis") {
  std::vector<Exp> b = monomials_up_to_clique(3, {0, 2}, 2);
  CHECK((long long)b.size() == binom_nd(2, 2));
  for (const Exp& a : b) {
    CHECK(a.size() == 3);
    CHECK(a[1] == 0);
  }
}

TEST_CASE("arithmetic") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = (x + y) * (x + y);
  CHECK(p.coeff({2, 0}) == 1.0);
  CHECK(p.coeff({1, 1}) == 2.0);
  CHECK(p.coeff({0, 2}) == 1.0);
  CHECK(p.degree() == 2);
  CHECK((p - p).is_zero());
  CHECK(p.evaluate(std::vector<double>{1.0, 2.0}) == 9.0);
  CHECK(p.norm_max() == 2.0);
  CHECK((x * y).pow(3).coeff({3, 3}) == 1.0);
}

TEST_CASE("cancellation removes terms") {
  Poly x = Poly::variable(1, 0);
  Poly p = x + Poly::constant(1, 1.0);
  Poly q = p - x;
  CHECK(q.num_terms() == 1);
  CHECK(q.coeff({0}) == 1.0);
}

TEST_CASE("squaring transform and even reduction") {
  Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
  Poly p = x * y + Poly::constant(2, 2.0);
  Poly pc = p.substitute_squares();
  CHECK(pc.coeff({2, 2}) == 1.0);
  CHECK(pc.is_even_in_each_variable());
  CHECK(pc.even_reduction() == p);
  CHECK_THROWS_AS(p.even_reduction(), ParityError);
}

TEST_CASE("theta_pow expands (1+||x||^2)^k") {
  Poly t2 = theta_pow(2, 2);
  CHECK(t2.coeff({0, 0}) == 1.0);
  CHECK(t2.coeff({2, 0}) == 2.0);
  CHECK(t2.coeff({0, 2}) == 2.0);
  CHECK(t2.coeff({4, 0}) == 1.0);
  CHECK(t2.coeff({2, 2}) == 2.0);
  CHECK(t2.coeff({0, 4}) == 1.0);
  // exact against repeated multiplication, rational coefficients
  RatPoly theta = theta_pow_t<Rational>(3, 1);
  CHECK(theta_pow_t<Rational>(3, 4) == theta.pow(4));
}

TEST_CASE("rational coefficients are exact") {
  RatPoly x = RatPoly::variable(1, 0);
  RatPoly p = x * x - RatPoly::constant(1, Rational(3, 2));
  RatPoly sq = p * p;
  CHECK(sq.coeff({0}) == Rational(9, 4));
  CHECK(sq.coeff({2}) == Rational(-3));
  CHECK(sq.coeff({4}) == Rational(1));
}

TEST_CASE("supported_on") {
  Poly p = Poly::variable(3, 0) * Poly::variable(3, 2);
  CHECK(p.supported_on({0, 2}));
  CHECK(!p.supported_on({0, 1}));
}

TEST_CASE("dimension mismatch throws") {
  CHECK_THROWS_AS(Poly::variable(2, 0) + Poly::variable(3, 0), DimensionError);
  CHECK_THROWS_AS(Poly::variable(2, 0).evaluate(std::vector<double>{1.0}), DimensionError);
}
