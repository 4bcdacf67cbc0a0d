#include "orx/indexsets.hpp"

#include <algorithm>
#include <map>

namespace orx {

std::vector<std::vector<Exp>> parity_blocks(int n, int d) {
  // group N^n_d by componentwise parity; monomials_up_to is graded-lex, so each
  // class comes out sorted and classes are keyed by their first member
  std::vector<std::vector<Exp>> classes;
  std::map<Exp, size_t> class_of;  // gamma -> position
  for (const Exp& a : monomials_up_to(n, d)) {
    Exp gamma(n);
    for (int j = 0; j < n; ++j) gamma[j] = a[j] % 2;
    auto [it, inserted] = class_of.try_emplace(gamma, classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(a);
  }
  return classes;
}

BlockCover cover_blocks_clique(int n, const std::vector<int>& I, int d, int s) {
  if (s < 1) throw Error("cover_blocks: s must be >= 1");
  BlockCover cover;
  cover.n = n;
  cover.d = d;
  cover.s = s;
  cover.clique = I;

  // alpha_1 < alpha_2 < ... : the graded-lex enumeration of N^I.  Members of
  // W_j beyond degree d can never enter T_j^(s,d) (N^I_d is a prefix of the
  // enumeration), so enumerating up to degree d suffices.
  const std::vector<Exp> basis = monomials_up_to_clique(n, I, d);
  const size_t b = basis.size();
  cover.blocks.resize(b);

  std::vector<std::vector<Exp>> nonempty_so_far;
  for (size_t j = 0; j < b; ++j) {
    // T_j = the first s members of W_j = {i >= j : alpha_i + alpha_j even},
    // intersected with N^I_d
    std::vector<Exp> T;
    for (size_t i = j; i < b && (int)T.size() < s; ++i) {
      if (is_even_exp(exp_add(basis[i], basis[j]))) T.push_back(basis[i]);
    }
    // A_j = T_j unless T_j is contained in some earlier nonempty block
    bool subsumed = false;
    for (const auto& A : nonempty_so_far) {
      bool subset = std::all_of(T.begin(), T.end(), [&](const Exp& t) {
        return std::find(A.begin(), A.end(), t) != A.end();
      });
      if (subset) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) {
      cover.blocks[j] = T;
      nonempty_so_far.push_back(T);
    }
  }
  return cover;
}

BlockCover cover_blocks(int n, int d, int s) {
  std::vector<int> all(n);
  for (int j = 0; j < n; ++j) all[j] = j;
  return cover_blocks_clique(n, all, d, s);
}

}  // namespace orx
