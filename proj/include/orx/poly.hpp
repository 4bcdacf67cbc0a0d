#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "orx/common.hpp"

namespace orx {

// Exponent vector alpha in N^n.
using Exp = std::vector<int>;

inline int total_degree(const Exp& a) {
  int d = 0;
  for (int e : a) d += e;
  return d;
}

inline bool is_even_exp(const Exp& a) {
  for (int e : a) {
    if (e % 2 != 0) return false;
  }
  return true;
}

inline Exp exp_add(const Exp& a, const Exp& b) {
  if (a.size() != b.size()) throw DimensionError("exp_add: dimension mismatch");
  Exp r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

inline Exp exp_half(const Exp& a) {
  Exp r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] / 2;
  return r;
}

inline Exp exp_double(const Exp& a) {
  Exp r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = 2 * a[j];
  return r;
}

// Graded lexicographic order: lower total degree first; within equal degree the
// monomial whose first differing coordinate is *larger* comes first.  This is
// the order of the paper's displayed basis (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).
struct GradLess {
  bool operator()(const Exp& a, const Exp& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    for (size_t j = 0; j < a.size() && j < b.size(); ++j) {
      if (a[j] != b[j]) return a[j] > b[j];
    }
    return false;
  }
};

inline std::string exp_to_string(const Exp& a) {
  std::string s = "(";
  for (size_t j = 0; j < a.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(a[j]);
  }
  return s + ")";
}

// binom(n+d, n) with overflow detection.
inline long long binom_nd(int n, int d) {
  long long r = 1;
  for (int j = 1; j <= n; ++j) {
    // r * (d + j) / j is exact at every step
    if (r > (long long)4e18 / (d + j)) throw SizeError("binom overflow");
    r = r * (d + j) / j;
  }
  return r;
}

// N^n_d in graded-lex order, length binom(n+d, n).
std::vector<Exp> monomials_up_to(int n, int d);

// Same but restricted to multi-indices supported on the sorted clique I
// (embedded in dimension n).
std::vector<Exp> monomials_up_to_clique(int n, const std::vector<int>& I, int d);

// Sparse polynomial with coefficients in T (double or Rational).
template <class T>
class BasicPoly {
 public:
  using Terms = std::map<Exp, T, GradLess>;

  explicit BasicPoly(int n = 0) : n_(n) {}

  static BasicPoly constant(int n, const T& c) {
    BasicPoly p(n);
    p.add_term(Exp(n, 0), c);
    return p;
  }
  static BasicPoly monomial(int n, const Exp& a, const T& c) {
    BasicPoly p(n);
    p.add_term(a, c);
    return p;
  }
  static BasicPoly variable(int n, int j) {  // x_{j}, 0-based j
    Exp a(n, 0);
    a[j] = 1;
    return monomial(n, a, T(1));
  }

  int dim() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }

  int degree() const {  // degree of 0 is 0 by convention (d_f etc. never see it)
    int d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
    return d;
  }

  T coeff(const Exp& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(const Exp& a, const T& c) {
    if ((int)a.size() != n_) throw DimensionError("add_term: exponent dimension mismatch");
    for (int e : a) {
      if (e < 0) throw Error("add_term: negative exponent");
    }
    auto [it, inserted] = terms_.try_emplace(a, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    } else if (c == T(0)) {
      terms_.erase(it);
    }
  }

  BasicPoly operator+(const BasicPoly& q) const {
    check_dim(q);
    BasicPoly r = *this;
    for (const auto& [a, c] : q.terms_) r.add_term(a, c);
    return r;
  }
  BasicPoly operator-(const BasicPoly& q) const {
    check_dim(q);
    BasicPoly r = *this;
    for (const auto& [a, c] : q.terms_) r.add_term(a, T(0) - c);
    return r;
  }
  BasicPoly operator*(const BasicPoly& q) const {
    check_dim(q);
    BasicPoly r(n_);
    for (const auto& [a, ca] : terms_) {
      for (const auto& [b, cb] : q.terms_) r.add_term(exp_add(a, b), ca * cb);
    }
    return r;
  }
  BasicPoly operator*(const T& c) const {
    BasicPoly r(n_);
    for (const auto& [a, ca] : terms_) r.add_term(a, ca * c);
    return r;
  }
  BasicPoly operator-() const { return *this * T(-1); }
  bool operator==(const BasicPoly& q) const { return n_ == q.n_ && terms_ == q.terms_; }

  BasicPoly pow(int k) const {
    if (k < 0) throw Error("pow: negative exponent");
    BasicPoly r = constant(n_, T(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  template <class Pt>
  T evaluate(const Pt& x) const {
    if ((int)x.size() != n_) throw DimensionError("evaluate: point dimension mismatch");
    T total(0);
    for (const auto& [a, c] : terms_) {
      T m = c;
      for (int j = 0; j < n_; ++j) {
        for (int e = 0; e < a[j]; ++e) m *= T(x[j]);
      }
      total += m;
    }
    return total;
  }

  // p_check(x) = p(x^2): double every exponent.
  BasicPoly substitute_squares() const {
    BasicPoly r(n_);
    for (const auto& [a, c] : terms_) r.add_term(exp_double(a), c);
    return r;
  }

  bool is_even_in_each_variable() const {
    for (const auto& [a, c] : terms_) {
      if (!is_even_exp(a)) return false;
    }
    return true;
  }

  // Left inverse of substitute_squares: halve every exponent.
  BasicPoly even_reduction() const {
    BasicPoly r(n_);
    for (const auto& [a, c] : terms_) {
      if (!is_even_exp(a)) throw ParityError("even_reduction: odd exponent " + exp_to_string(a));
      r.add_term(exp_half(a), c);
    }
    return r;
  }

  // ||p||_max = max |coefficient|, 0 for the zero polynomial.
  T norm_max() const {
    T m(0);
    for (const auto& [a, c] : terms_) {
      T ac = c < T(0) ? T(0) - c : c;
      if (ac > m) m = ac;
    }
    return m;
  }

  // Does every monomial use only variables in the sorted set I?
  bool supported_on(const std::vector<int>& I) const {
    std::vector<char> in(n_, 0);
    for (int j : I) in[j] = 1;
    for (const auto& [a, c] : terms_) {
      for (int j = 0; j < n_; ++j) {
        if (a[j] != 0 && !in[j]) return false;
      }
    }
    return true;
  }

 private:
  void check_dim(const BasicPoly& q) const {
    if (n_ != q.n_) throw DimensionError("polynomial dimension mismatch");
  }
  int n_;
  Terms terms_;
};

using Poly = BasicPoly<double>;
using RatPoly = BasicPoly<Rational>;

// theta^k = (1 + sum_j x_j^2)^k, expanded by multinomials.
template <class T>
BasicPoly<T> theta_pow_t(int n, int k) {
  if (k < 0) throw Error("theta_pow: negative power");
  BasicPoly<T> r(n);
  for (const Exp& a : monomials_up_to(n, k)) {
    // coefficient of x^{2a}: k! / ((k-|a|)! * prod a_j!)
    T c(1);
    int used = 0;
    for (int j = 0; j < n; ++j) {
      for (int i = 1; i <= a[j]; ++i) {
        ++used;
        c = c * T(k - used + 1) / T(i);
      }
    }
    r.add_term(exp_double(a), c);
  }
  return r;
}

inline Poly theta_pow(int n, int k) { return theta_pow_t<double>(n, k); }

inline RatPoly to_rational(const Poly& p) {
  RatPoly r(p.dim());
  for (const auto& [a, c] : p.terms()) r.add_term(a, Rational(c));
  return r;
}

inline Poly to_double(const RatPoly& p) {
  Poly r(p.dim());
  for (const auto& [a, c] : p.terms()) r.add_term(a, c.template convert_to<double>());
  return r;
}

std::string poly_to_string(const Poly& p);

}  // namespace orx
