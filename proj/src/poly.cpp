#include "orx/poly.hpp"

#include <algorithm>
#include <sstream>

namespace orx {

namespace {

void enumerate_rec(int pos, int remaining, Exp& cur, std::vector<Exp>& out, const std::vector<int>& slots) {
  if (pos == (int)slots.size()) {
    out.push_back(cur);
    return;
  }
  // larger exponent in the earlier coordinate comes first at fixed degree
  for (int e = remaining; e >= 0; --e) {
    cur[slots[pos]] = e;
    enumerate_rec(pos + 1, remaining - e, cur, out, slots);
  }
  cur[slots[pos]] = 0;
}

// all alpha supported on `slots` with |alpha| == deg, in lex order matching GradLess
void fixed_degree(int n, const std::vector<int>& slots, int deg, std::vector<Exp>& out) {
  Exp cur(n, 0);
  std::vector<Exp> tmp;
  enumerate_rec(0, deg, cur, tmp, slots);
  // enumerate_rec emits sums < deg too (trailing slack); keep only exact-degree ones
  for (auto& a : tmp) {
    if (total_degree(a) == deg) out.push_back(std::move(a));
  }
}

}  // namespace

std::vector<Exp> monomials_up_to_clique(int n, const std::vector<int>& I, int d) {
  if (n < 1) throw Error("monomials_up_to: n must be >= 1");
  if (d < 0) throw Error("monomials_up_to: d must be >= 0");
  if (I.empty()) throw Error("monomials_up_to_clique: empty clique");
  for (size_t t = 0; t < I.size(); ++t) {
    if (I[t] < 0 || I[t] >= n || (t > 0 && I[t] <= I[t - 1])) throw Error("monomials_up_to_clique: clique must be sorted, distinct, within [n]");
  }
  binom_nd((int)I.size(), d);  // size guard
  std::vector<Exp> out;
  for (int deg = 0; deg <= d; ++deg) fixed_degree(n, I, deg, out);
  return out;
}

std::vector<Exp> monomials_up_to(int n, int d) {
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  return monomials_up_to_clique(n, all, d);
}

std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : p.terms()) {
    if (!first) os << (c >= 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    double ac = std::abs(c);
    bool has_vars = total_degree(a) > 0;
    if (!has_vars || ac != 1.0) os << ac;
    for (int j = 0; j < p.dim(); ++j) {
      if (a[j] == 0) continue;
      os << "x" << (j + 1);
      if (a[j] > 1) os << "^" << a[j];
    }
  }
  return os.str();
}

}  // namespace orx
