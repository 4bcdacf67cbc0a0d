#include "orx/sparsity.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace orx {

namespace {

std::vector<int> support_of(const Exp& a) {
  std::vector<int> s;
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] > 0) s.push_back((int)j);
  }
  return s;
}

void add_poly_edges(const Poly& p, std::vector<std::vector<char>>& adj) {
  for (const auto& [a, c] : p.terms()) {
    std::vector<int> s = support_of(a);
    for (size_t i = 0; i < s.size(); ++i) {
      for (size_t j = i + 1; j < s.size(); ++j) adj[s[i]][s[j]] = adj[s[j]][s[i]] = 1;
    }
  }
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool rip_holds(const std::vector<std::vector<int>>& cliques) {
  std::set<int> seen;
  for (size_t c = 0; c < cliques.size(); ++c) {
    if (c > 0) {
      std::vector<int> inter;
      for (int v : cliques[c]) {
        if (seen.count(v)) inter.push_back(v);
      }
      bool ok = false;
      for (size_t l = 0; l < c && !ok; ++l) ok = subset_of(inter, cliques[l]);
      if (!ok) return false;
    }
    seen.insert(cliques[c].begin(), cliques[c].end());
  }
  return true;
}

std::vector<std::vector<char>> csp_graph(const PopInstance& pop) {
  std::vector<std::vector<char>> adj(pop.n, std::vector<char>(pop.n, 0));
  add_poly_edges(pop.f, adj);
  for (const auto& con : pop.constraints) add_poly_edges(con.g, adj);
  return adj;
}

CliqueStructure chordal_cliques(const std::vector<std::vector<char>>& adj0) {
  const int n = (int)adj0.size();
  // greedy minimum-degree elimination with lexicographic tie-break
  std::vector<std::set<int>> nb(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && adj0[i][j]) nb[i].insert(j);
    }
  }
  std::vector<char> eliminated(n, 0);
  std::vector<int> order;
  std::vector<std::vector<int>> candidate;  // {v} + neighbors at elimination time
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!eliminated[v] && (best == -1 || nb[v].size() < nb[best].size())) best = v;
    }
    std::vector<int> C(nb[best].begin(), nb[best].end());
    C.push_back(best);
    std::sort(C.begin(), C.end());
    candidate.push_back(C);
    // connect the remaining neighborhood (chordal fill)
    for (int a : nb[best]) {
      for (int b : nb[best]) {
        if (a != b) nb[a].insert(b);
      }
    }
    for (int a : nb[best]) nb[a].erase(best);
    eliminated[best] = 1;
    order.push_back(best);
  }
  // keep maximal candidates only
  std::vector<std::vector<int>> cliques;
  for (size_t i = 0; i < candidate.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < candidate.size() && maximal; ++j) {
      if (i != j && candidate[i].size() <= candidate[j].size() && subset_of(candidate[i], candidate[j]) &&
          (candidate[i] != candidate[j] || j < i))
        maximal = false;
    }
    if (maximal) cliques.push_back(candidate[i]);
  }
  // order for RIP: max-weight intersection spanning tree + DFS preorder
  const int p = (int)cliques.size();
  std::vector<char> placed(p, 0);
  std::vector<int> perm;
  perm.push_back(0);
  placed[0] = 1;
  while ((int)perm.size() < p) {
    int best = -1, bestw = -1;
    for (int c = 0; c < p; ++c) {
      if (placed[c]) continue;
      int w = 0;
      for (int c2 : perm) {
        int inter = 0;
        for (int v : cliques[c]) {
          if (std::binary_search(cliques[c2].begin(), cliques[c2].end(), v)) ++inter;
        }
        w = std::max(w, inter);
      }
      if (w > bestw) {
        bestw = w;
        best = c;
      }
    }
    placed[best] = 1;
    perm.push_back(best);
  }
  CliqueStructure cs;
  for (int c : perm) cs.cliques.push_back(cliques[c]);
  if (!rip_holds(cs.cliques)) throw Error("chordal_cliques: RIP violated (internal bug)");
  return cs;
}

void assign_to_cliques(const PopInstance& pop, CliqueStructure& cs) {
  const int p = cs.p();
  cs.assignments.assign(p, {});
  cs.simplex_idx.assign(p, 0);
  cs.radii.assign(p, 0.0);
  cs.objective_split.assign(p, Poly(pop.n));
  // each constraint goes to the first clique covering its support
  for (size_t i = 0; i < pop.constraints.size(); ++i) {
    std::vector<int> sup;
    {
      std::vector<char> used(pop.n, 0);
      for (const auto& [a, c] : pop.constraints[i].g.terms()) {
        for (int j = 0; j < pop.n; ++j) {
          if (a[j] > 0) used[j] = 1;
        }
      }
      for (int j = 0; j < pop.n; ++j) {
        if (used[j]) sup.push_back(j);
      }
    }
    for (int c = 0; c < p; ++c) {
      if (subset_of(sup, cs.cliques[c])) {
        cs.assignments[c].push_back((int)i + 1);
        break;
      }
    }
  }
  // flagged bound per clique: a simplex/ball constraint whose support is the clique
  for (int c = 0; c < p; ++c) {
    for (int i : cs.assignments[c]) {
      const Constraint& con = pop.constraints[i - 1];
      if (con.flag == BoundFlag::none) continue;
      cs.simplex_idx[c] = i;
      cs.radii[c] = con.R;
      break;
    }
  }
  // greedy objective split: monomial -> first covering clique
  for (const auto& [a, coef] : pop.f.terms()) {
    std::vector<int> sup = support_of(a);
    for (int c = 0; c < p; ++c) {
      if (subset_of(sup, cs.cliques[c])) {
        cs.objective_split[c].add_term(a, coef);
        break;
      }
    }
  }
}

CliqueStructure resolve_cliques(const PopInstance& pop) {
  CliqueStructure cs;
  if (pop.cliques && !pop.cliques->cliques.empty()) {
    cs.cliques = pop.cliques->cliques;
    for (auto& I : cs.cliques) std::sort(I.begin(), I.end());
  } else {
    cs = chordal_cliques(csp_graph(pop));
  }
  assign_to_cliques(pop, cs);
  if (pop.cliques && !pop.cliques->assignments.empty()) cs.assignments = pop.cliques->assignments;
  return cs;
}

AssumptionReport check_assumption(const PopInstance& pop, const CliqueStructure& cs) {
  AssumptionReport rep;
  const int p = cs.p();
  {
    AssumptionReport::Item it{"running intersection property", rip_holds(cs.cliques), ""};
    if (!it.pass) it.detail = "stored clique order violates RIP";
    rep.items.push_back(it);
  }
  {
    std::set<int> covered;
    for (const auto& I : cs.cliques) covered.insert(I.begin(), I.end());
    AssumptionReport::Item it{"cliques cover all variables", (int)covered.size() == pop.n, ""};
    rep.items.push_back(it);
  }
  {
    AssumptionReport::Item it{"every constraint assigned to a covering clique", true, ""};
    std::set<int> assigned;
    for (int c = 0; c < p; ++c) {
      for (int i : cs.assignments[c]) {
        assigned.insert(i);
        if (!pop.constraints[i - 1].g.supported_on(cs.cliques[c])) {
          it.pass = false;
          it.detail = "g_" + std::to_string(i) + " not supported on clique " + std::to_string(c + 1);
        }
      }
    }
    for (size_t i = 1; i <= pop.constraints.size(); ++i) {
      if (!assigned.count((int)i)) {
        it.pass = false;
        it.detail = "g_" + std::to_string(i) + " unassigned";
      }
    }
    rep.items.push_back(it);
  }
  {
    AssumptionReport::Item it{"per-clique simplex/ball bound", true, ""};
    for (int c = 0; c < p; ++c) {
      if (cs.simplex_idx[c] == 0) {
        it.pass = false;
        it.detail = "clique " + std::to_string(c + 1) + " has no flagged bound";
        break;
      }
      const Constraint& con = pop.constraints[cs.simplex_idx[c] - 1];
      bool shape_ok = false;
      if (con.flag == BoundFlag::simplex) shape_ok = con.g == PopInstance::simplex_poly(pop.n, con.R, cs.cliques[c]);
      if (con.flag == BoundFlag::ball) {
        Poly ball = Poly::constant(pop.n, con.R);
        for (int j : cs.cliques[c]) ball = ball - Poly::variable(pop.n, j) * Poly::variable(pop.n, j);
        // g_{i_c} may be R - sum x_j (squares to R - ||x||^2) or already quadratic
        shape_ok = con.g == PopInstance::simplex_poly(pop.n, con.R, cs.cliques[c]) || con.g == ball;
      }
      if (!shape_ok) {
        it.pass = false;
        it.detail = "clique " + std::to_string(c + 1) + " bound does not match R_c - sum_{j in I_c} x_j";
        break;
      }
    }
    rep.items.push_back(it);
  }
  {
    AssumptionReport::Item it{"objective splits along cliques", true, ""};
    Poly sum(pop.n);
    for (const Poly& fc : cs.objective_split) sum = sum + fc;
    if (!(sum == pop.f)) {
      it.pass = false;
      // name a monomial that no clique covers
      Poly rest = pop.f - sum;
      if (!rest.is_zero()) it.detail = "monomial " + exp_to_string(rest.terms().begin()->first) + " spans cliques";
    }
    rep.items.push_back(it);
  }
  return rep;
}

PopInstance augment_with_clique_bounds(const PopInstance& pop, const CliqueStructure& cs, const std::vector<double>& R) {
  if (R.size() != 1 && (int)R.size() != cs.p()) throw Error("augment_with_clique_bounds: radius count mismatch");
  for (double r : R) {
    if (!(r > 0)) throw Error("augment_with_clique_bounds: nonpositive radius");
  }
  PopInstance out = pop;
  for (int c = 0; c < cs.p(); ++c) {
    if (cs.simplex_idx[c] != 0) continue;
    double Rc = R.size() == 1 ? R[0] : R[c];
    Constraint con;
    con.g = PopInstance::simplex_poly(pop.n, Rc, cs.cliques[c]);
    con.flag = BoundFlag::simplex;
    con.R = Rc;
    out.constraints.push_back(con);
  }
  return out;
}

std::string AssumptionReport::to_string() const {
  std::ostringstream os;
  for (const auto& it : items) {
    os << (it.pass ? "[pass] " : "[FAIL] ") << it.name;
    if (!it.detail.empty()) os << ": " << it.detail;
    os << "\n";
  }
  return os.str();
}

}  // namespace orx
