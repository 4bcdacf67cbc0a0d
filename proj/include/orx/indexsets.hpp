#pragma once

#include <vector>

#include "orx/poly.hpp"

namespace orx {

// The ordered family A^(s,d)_j of monomial blocks (empty blocks retained so the
// list stays index-aligned with j in [b(|I|,d)]).
struct BlockCover {
  int n = 0;
  int d = 0;
  int s = 1;
  std::vector<int> clique;             // sorted support set; [0..n-1] for dense covers
  std::vector<std::vector<Exp>> blocks;
};

// Parity classes Lambda_gamma = {alpha in N^n_d : alpha - gamma in 2N^n},
// gamma in {0,1}^n; only nonempty classes are returned, ordered by gamma's
// first member in graded-lex.
std::vector<std::vector<Exp>> parity_blocks(int n, int d);

BlockCover cover_blocks(int n, int d, int s);
BlockCover cover_blocks_clique(int n, const std::vector<int>& I, int d, int s);

}  // namespace orx
