#include "orx/relax.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace orx {

std::string method_name(Method m) {
  switch (m) {
    case Method::put: return "put";
    case Method::pol: return "pol";
    case Method::han: return "han";
    case Method::sppol: return "sppol";
    case Method::sphan: return "sphan";
    case Method::spput: return "spput";
  }
  return "?";
}

namespace {

// one Gram family to be materialized: constraint i (1-based), Handelman power,
// multiplier h, block list, moment table tag
struct Family {
  int i = 0;
  int power = 0;
  int clique = -1;
  Poly h;
  std::vector<std::vector<Exp>> blocks;
  int ytag = -1;
};

int mom_id(const VariableMap& vm, int ytag, const Exp& full) {
  if (vm.even_only) {
    if (!is_even_exp(full)) throw ParityError("odd moment index " + exp_to_string(full) + " in even-only build");
    return vm.moment_index(ytag, exp_half(full));
  }
  return vm.moment_index(ytag, full);
}

// coefficients of a polynomial as a moment-variable map
std::map<int, double> poly_row(const VariableMap& vm, int ytag, const Poly& p) {
  std::map<int, double> row;
  for (const auto& [a, c] : p.terms()) row[mom_id(vm, ytag, a)] += c;
  return row;
}

int add_moment_row(ConicProgram& prog, const std::map<int, double>& mrow, double rhs, const std::string& label) {
  ConicProgram::Row r;
  for (const auto& [idx, val] : mrow) {
    if (val != 0.0) r.coeffs.push_back({idx, val});
  }
  r.rhs = rhs;
  r.label = label;
  return prog.add_row(std::move(r));
}

// Materialize all families: size cones first (variable indices depend on the
// full layout), then emit one tie row per matrix entry.
void materialize(Relaxation& rel, std::vector<Family>& fams) {
  ConicProgram& prog = rel.prog;
  VariableMap& vm = rel.map;
  prog.num_free = (int)vm.moments.size();

  for (Family& fam : fams) {
    for (size_t j = 0; j < fam.blocks.size(); ++j) {
      if (fam.blocks[j].empty()) continue;  // paper's empty A_j, skipped by builders
      GramRef gr;
      gr.constraint = fam.i;
      gr.power = fam.power;
      gr.block_j = (int)j;
      gr.clique = fam.clique;
      gr.basis = fam.blocks[j];
      if (gr.basis.size() == 1) {
        gr.scalar = true;
        gr.nonneg_index = prog.num_nonneg++;
      } else {
        gr.psd_block = (int)prog.psd_dims.size();
        prog.psd_dims.push_back((int)gr.basis.size());
      }
      vm.grams.push_back(std::move(gr));
    }
  }

  // tie rows: entry (a,b) of M_B(h y) equals the cone variable
  for (GramRef& gr : vm.grams) {
    const Family* fam = nullptr;
    for (const Family& f : fams) {
      if (f.i == gr.constraint && f.power == gr.power && f.clique == gr.clique) {
        fam = &f;
        break;
      }
    }
    const int r = (int)gr.basis.size();
    std::string base = "tie i=" + std::to_string(gr.constraint) + " p=" + std::to_string(gr.power) + " c=" + std::to_string(gr.clique) + " j=" + std::to_string(gr.block_j);
    for (int b = 0; b < r; ++b) {
      for (int a = 0; a <= b; ++a) {
        std::map<int, double> mrow;
        Exp bab = exp_add(gr.basis[a], gr.basis[b]);
        for (const auto& [g, cg] : fam->h.terms()) mrow[mom_id(vm, fam->ytag, exp_add(g, bab))] -= cg;
        ConicProgram::Row row;
        for (const auto& [idx, val] : mrow) {
          if (val != 0.0) row.coeffs.push_back({idx, val});
        }
        if (gr.scalar) {
          row.coeffs.push_back({prog.cone_offset() + gr.nonneg_index, 1.0});
        } else {
          row.coeffs.push_back({prog.svec_index(gr.psd_block, a, b), 1.0 / ConicProgram::svec_scale(a, b)});
        }
        row.rhs = 0.0;
        row.label = base + " e=(" + std::to_string(a) + "," + std::to_string(b) + ")";
        gr.tie_rows.push_back(prog.add_row(std::move(row)));
      }
    }
  }
}

void set_objective(Relaxation& rel, const std::vector<std::pair<int, Poly>>& objs) {
  ConicProgram& prog = rel.prog;
  prog.c.assign(prog.total_vars(), 0.0);
  for (const auto& [ytag, p] : objs) {
    for (const auto& [idx, val] : poly_row(rel.map, ytag, p)) prog.c[idx] += val;
  }
}

void set_normalization(Relaxation& rel, int ytag, const Poly& normp, const std::string& label) {
  rel.prog.normalization_row = add_moment_row(rel.prog, poly_row(rel.map, ytag, normp), 1.0, label);
}

void require_compactness(const PopInstance& pop, double epsilon, const char* who) {
  if (epsilon > 0) return;
  if (pop.flagged_bound(BoundFlag::simplex) == 0 && pop.flagged_bound(BoundFlag::ball) == 0)
    throw ConfigError(std::string(who) + ": flagged simplex/ball constraint required when epsilon = 0");
}

CliqueStructure checked_cliques(const PopInstance& pop, bool need_bounds, const char* who) {
  CliqueStructure cs = resolve_cliques(pop);
  AssumptionReport rep = check_assumption(pop, cs);
  for (const auto& it : rep.items) {
    if (!it.pass && (need_bounds || it.name != "per-clique simplex/ball bound"))
      throw ConfigError(std::string(who) + ": Assumption 2 fails\n" + rep.to_string());
  }
  return cs;
}

}  // namespace

Relaxation build_polya_dense(const PopInstance& pop, int k, int s, double epsilon) {
  if (k < 0 || s < 1 || epsilon < 0) throw ConfigError("build_polya_dense: need k >= 0, s >= 1, epsilon >= 0");
  require_compactness(pop, epsilon, "build_polya_dense");
  const int n = pop.n, m = pop.m_total(), df = pop.d_f();

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::pol;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.s = s;
  vm.epsilon = epsilon;
  vm.even_only = true;
  for (const Exp& a : monomials_up_to(n, df + k)) vm.add_moment(-1, a);

  std::vector<Family> fams;
  vm.k_i.assign(m + 1, -1);
  for (int i = 1; i <= m; ++i) {
    // the flagged simplex inequality is the compactness certificate consumed by
    // the theta^k multiplier, not a localizer family (equality pairs stay)
    if (i <= (int)pop.constraints.size() && pop.constraints[i - 1].flag == BoundFlag::simplex &&
        pop.constraints[i - 1].eq_partner < 0)
      continue;
    int ki = k + df - pop.d_g(i);
    if (ki < 0) {
      vm.warnings.push_back("constraint g_" + std::to_string(i) + " omitted: k_i = " + std::to_string(ki) + " < 0");
      continue;
    }
    vm.k_i[i] = ki;
    fams.push_back({i, 0, -1, pop.g(i).substitute_squares(), cover_blocks(n, ki, s).blocks, -1});
  }
  materialize(rel, fams);

  Poly obj = theta_pow(n, k) * pop.f.substitute_squares();
  if (epsilon > 0) obj = obj + theta_pow(n, k + df) * epsilon;  // L_y(theta^k(f_check + eps theta^{d_f}))
  set_objective(rel, {{-1, obj}});
  set_normalization(rel, -1, theta_pow(n, k), "norm L(theta^k)=1");
  rel.prog.validate();
  return rel;
}

Relaxation build_handelman_dense(const PopInstance& pop, int k, int s) {
  if (k < 1 || s < 1) throw ConfigError("build_handelman_dense: need k >= 1, s >= 1");
  if (k < pop.f.degree()) throw ConfigError("build_handelman_dense: k must be >= deg f");
  int i1 = pop.flagged_bound(BoundFlag::simplex);
  if (i1 == 0) throw ConfigError("build_handelman_dense: flagged simplex constraint required (Handelman generator)");
  const int n = pop.n, m = pop.m_total();

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::han;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.s = s;
  vm.even_only = true;
  for (const Exp& a : monomials_up_to(n, k)) vm.add_moment(-1, a);

  const Poly gen = pop.g(i1).substitute_squares();  // R - ||x||^2
  std::vector<Family> fams;
  vm.k_i.assign(m + 1, -1);
  for (int i = 1; i <= m; ++i) {
    int dgi = pop.d_g(i);
    if (k < dgi) {
      vm.warnings.push_back("constraint g_" + std::to_string(i) + " omitted: k < d_g");
      continue;
    }
    vm.k_i[i] = k - dgi;
    Poly gi = pop.g(i).substitute_squares();
    for (int j = 0; j <= k - dgi; ++j) {
      int kij = k - dgi - j;
      fams.push_back({i, j, -1, gi * gen.pow(j), cover_blocks(n, kij, s).blocks, -1});
    }
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f.substitute_squares()}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");
  rel.prog.validate();
  return rel;
}

Relaxation build_putinar_dense(const PopInstance& pop, int k, bool symmetry) {
  if (symmetry) return build_putinar_squared(pop, 2 * k, true);
  const int n = pop.n, m = pop.m_total();
  int kmin = (pop.f.degree() + 1) / 2;
  for (int i = 1; i <= m; ++i) kmin = std::max(kmin, (pop.d_g(i) + 1) / 2);
  kmin = std::max(kmin, 1);
  if (k < kmin) throw ConfigError("build_putinar_dense: order k too small (need k >= " + std::to_string(kmin) + ")");

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::put;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.even_only = false;
  for (const Exp& a : monomials_up_to(n, 2 * k)) vm.add_moment(-1, a);

  std::vector<Family> fams;
  vm.k_i.assign(m + n + 1, -1);
  for (int i = 1; i <= m; ++i) {
    int t = k - (pop.d_g(i) + 1) / 2;
    vm.k_i[i] = t;
    fams.push_back({i, 0, -1, pop.g(i), {monomials_up_to(n, t)}, -1});
  }
  for (int j = 0; j < n; ++j) {  // orthant localizers g_{m+j} = x_j
    vm.k_i[m + j + 1] = k - 1;
    fams.push_back({m + j + 1, 0, -1, Poly::variable(n, j), {monomials_up_to(n, k - 1)}, -1});
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");
  rel.prog.validate();
  return rel;
}

Relaxation build_putinar_squared(const PopInstance& pop, int k, bool split) {
  const int n = pop.n, m = pop.m_total();
  int kmin = std::max(pop.f.degree(), 1);
  for (int i = 1; i <= m; ++i) kmin = std::max(kmin, pop.d_g(i));
  if (k < kmin) throw ConfigError("build_putinar_squared: order k too small (need k >= " + std::to_string(kmin) + ")");

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::put;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  // without the parity split the Gram bases mix parities, so odd moments of
  // the squared problem appear as (free) variables and must be stored
  vm.even_only = split;
  if (split) {
    for (const Exp& a : monomials_up_to(n, k)) vm.add_moment(-1, a);
  } else {
    for (const Exp& a : monomials_up_to(n, 2 * k)) vm.add_moment(-1, a);
  }

  std::vector<Family> fams;
  vm.k_i.assign(m + 1, -1);
  for (int i = 1; i <= m; ++i) {
    int t = k - pop.d_g(i);
    vm.k_i[i] = t;
    std::vector<std::vector<Exp>> blocks;
    if (split) blocks = parity_blocks(n, t);
    else blocks = {monomials_up_to(n, t)};
    fams.push_back({i, 0, -1, pop.g(i).substitute_squares(), blocks, -1});
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f.substitute_squares()}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");
  rel.prog.validate();
  return rel;
}

namespace {

// union over cliques of N^{I_c}_t, graded-lex, registered under ytag
void register_union_moments(VariableMap& vm, int n, const CliqueStructure& cs, int t, int ytag) {
  std::set<Exp, GradLess> all;
  for (const auto& I : cs.cliques) {
    for (const Exp& a : monomials_up_to_clique(n, I, t)) all.insert(a);
  }
  for (const Exp& a : all) vm.add_moment(ytag, a);
}

Poly theta_clique(int n, const std::vector<int>& I, int k) {
  Poly th = Poly::constant(n, 1.0);
  for (int j : I) th = th + Poly::variable(n, j) * Poly::variable(n, j);
  return th.pow(k);
}

std::vector<int> family_constraints(const CliqueStructure& cs, int c, int m) {
  std::vector<int> is = cs.assignments[c];
  is.push_back(m);  // the implicit g_m = 1 is in every J_c
  return is;
}

}  // namespace

Relaxation build_polya_sparse(const PopInstance& pop, int k, int d, int s) {
  if (k < 0 || s < 1) throw ConfigError("build_polya_sparse: need k >= 0, s >= 1");
  if (d < pop.f.degree()) throw ConfigError("build_polya_sparse: need d >= deg f (objective must be representable)");
  CliqueStructure cs = checked_cliques(pop, true, "build_polya_sparse");
  const int n = pop.n, m = pop.m_total(), p = cs.p();

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::sppol;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.s = s;
  vm.d = d;
  vm.even_only = true;
  vm.cliques = cs;
  register_union_moments(vm, n, cs, d, -1);  // global y
  for (int c = 0; c < p; ++c) {
    for (const Exp& a : monomials_up_to_clique(n, cs.cliques[c], d + k)) vm.add_moment(c, a);
  }

  std::vector<Family> fams;
  vm.k_i.assign(m + 1, -1);
  for (int c = 0; c < p; ++c) {
    for (int i : family_constraints(cs, c, m)) {
      // skip flagged simplex inequalities (compactness certificates, as in the dense build)
      if (i <= (int)pop.constraints.size() && pop.constraints[i - 1].flag == BoundFlag::simplex &&
          pop.constraints[i - 1].eq_partner < 0)
        continue;
      int ki = k + d - pop.d_g(i);
      if (ki < 0) {
        vm.warnings.push_back("constraint g_" + std::to_string(i) + " omitted on clique " + std::to_string(c + 1));
        continue;
      }
      vm.k_i[i] = ki;
      fams.push_back({i, 0, c, pop.g(i).substitute_squares(), cover_blocks_clique(n, cs.cliques[c], ki, s).blocks, c});
    }
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f.substitute_squares()}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");

  // linking rows: diag(M_d(y, I_c)) = diag(M_d(theta_c^k y^(c), I_c))
  for (int c = 0; c < p; ++c) {
    Poly thk = theta_clique(n, cs.cliques[c], k);
    for (const Exp& a : monomials_up_to_clique(n, cs.cliques[c], d)) {
      std::map<int, double> mrow;
      mrow[vm.moment_index(-1, a)] += 1.0;
      for (const auto& [g, cg] : thk.terms()) mrow[vm.moment_index(c, exp_add(exp_half(g), a))] -= cg;
      add_moment_row(rel.prog, mrow, 0.0, "link c=" + std::to_string(c) + " a=" + exp_to_string(a));
    }
  }
  rel.prog.validate();
  return rel;
}

Relaxation build_handelman_sparse(const PopInstance& pop, int k, int s) {
  if (k < 1 || s < 1) throw ConfigError("build_handelman_sparse: need k >= 1, s >= 1");
  if (k < pop.f.degree()) throw ConfigError("build_handelman_sparse: k must be >= deg f");
  CliqueStructure cs = checked_cliques(pop, true, "build_handelman_sparse");
  const int n = pop.n, m = pop.m_total(), p = cs.p();

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::sphan;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.s = s;
  vm.even_only = true;
  vm.cliques = cs;
  register_union_moments(vm, n, cs, k, -1);

  std::vector<Family> fams;
  vm.k_i.assign(m + 1, -1);
  for (int c = 0; c < p; ++c) {
    const Poly gen = pop.g(cs.simplex_idx[c]).substitute_squares();  // R_c - ||x(I_c)||^2
    for (int i : family_constraints(cs, c, m)) {
      int dgi = pop.d_g(i);
      if (k < dgi) {
        vm.warnings.push_back("constraint g_" + std::to_string(i) + " omitted on clique " + std::to_string(c + 1));
        continue;
      }
      vm.k_i[i] = k - dgi;
      Poly gi = pop.g(i).substitute_squares();
      for (int j = 0; j <= k - dgi; ++j) {
        fams.push_back({i, j, c, gi * gen.pow(j), cover_blocks_clique(n, cs.cliques[c], k - dgi - j, s).blocks, -1});
      }
    }
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f.substitute_squares()}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");
  rel.prog.validate();
  return rel;
}

Relaxation build_putinar_sparse(const PopInstance& pop, int k) {
  CliqueStructure cs = checked_cliques(pop, false, "build_putinar_sparse");
  const int n = pop.n, m = pop.m_total(), p = cs.p();
  int kmin = std::max((pop.f.degree() + 1) / 2, 1);
  for (int i = 1; i <= m; ++i) kmin = std::max(kmin, (pop.d_g(i) + 1) / 2);
  if (k < kmin) throw ConfigError("build_putinar_sparse: order k too small (need k >= " + std::to_string(kmin) + ")");

  Relaxation rel;
  VariableMap& vm = rel.map;
  vm.method = Method::spput;
  vm.n = n;
  vm.unit = m;
  vm.k = k;
  vm.even_only = false;
  vm.cliques = cs;
  {
    std::set<Exp, GradLess> all;
    for (const auto& I : cs.cliques) {
      for (const Exp& a : monomials_up_to_clique(n, I, 2 * k)) all.insert(a);
    }
    for (const Exp& a : all) vm.add_moment(-1, a);
  }

  std::vector<Family> fams;
  vm.k_i.assign(m + n + 1, -1);
  std::vector<char> orthant_done(n, 0);
  for (int c = 0; c < p; ++c) {
    for (int i : family_constraints(cs, c, m)) {
      int t = k - (pop.d_g(i) + 1) / 2;
      vm.k_i[i] = t;
      fams.push_back({i, 0, c, pop.g(i), {monomials_up_to_clique(n, cs.cliques[c], t)}, -1});
    }
    for (int j : cs.cliques[c]) {
      if (orthant_done[j]) continue;
      orthant_done[j] = 1;
      vm.k_i[m + j + 1] = k - 1;
      fams.push_back({m + j + 1, 0, c, Poly::variable(n, j), {monomials_up_to_clique(n, cs.cliques[c], k - 1)}, -1});
    }
  }
  materialize(rel, fams);
  set_objective(rel, {{-1, pop.f}});
  set_normalization(rel, -1, Poly::constant(n, 1.0), "norm y0=1");
  rel.prog.validate();
  return rel;
}

}  // namespace orx
