#pragma once

#include <string>
#include <vector>

#include "orx/pop.hpp"

namespace orx {

// Ordered clique decomposition with everything the sparse builders need.
struct CliqueStructure {
  std::vector<std::vector<int>> cliques;      // I_c, sorted subsets of [n] (0-based)
  std::vector<std::vector<int>> assignments;  // J_c, 1-based constraint indices (excluding the implicit g_m)
  std::vector<int> simplex_idx;               // i_c, 1-based; 0 when the clique has no flagged bound
  std::vector<double> radii;                  // R_c (valid when simplex_idx[c] != 0)
  std::vector<Poly> objective_split;          // f_c with f = sum_c f_c

  int p() const { return (int)cliques.size(); }
};

struct AssumptionReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::vector<Item> items;
  bool all_pass() const {
    for (const auto& it : items) {
      if (!it.pass) return false;
    }
    return true;
  }
  std::string to_string() const;
};

// n x n symmetric adjacency: edge between variables co-occurring in a monomial
// of f or of any g_i.
std::vector<std::vector<char>> csp_graph(const PopInstance& pop);

// Maximal cliques of the min-degree chordal extension, ordered to satisfy the
// running intersection property (clique-tree DFS preorder).
CliqueStructure chordal_cliques(const std::vector<std::vector<char>>& adj);

// Fill assignments / per-clique bounds / objective split for given cliques.
// Missing pieces are reported by check_assumption, not thrown here.
void assign_to_cliques(const PopInstance& pop, CliqueStructure& cs);

// User cliques if present (with assignments derived when not supplied),
// otherwise csp detection.  Always runs assign_to_cliques.
CliqueStructure resolve_cliques(const PopInstance& pop);

AssumptionReport check_assumption(const PopInstance& pop, const CliqueStructure& cs);

// Add a flagged simplex constraint R_c - sum_{j in I_c} x_j for each clique
// lacking one.  R may have size 1 (shared radius) or p entries.
PopInstance augment_with_clique_bounds(const PopInstance& pop, const CliqueStructure& cs, const std::vector<double>& R);

bool rip_holds(const std::vector<std::vector<int>>& cliques);

}  // namespace orx
