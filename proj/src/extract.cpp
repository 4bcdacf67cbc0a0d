#include "orx/extract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace orx {

namespace {

// monomials of the g = 1 family basis at its top degree
std::vector<Exp> unit_basis(const VariableMap& vm, int clique) {
  int km = vm.k_i.at(vm.unit);
  if (km < 0) throw ConfigError("certificate has no g = 1 family");
  if (clique < 0) return monomials_up_to(vm.n, km);
  return monomials_up_to_clique(vm.n, vm.cliques.cliques.at(clique), km);
}

}  // namespace

Certificate make_certificate(const Relaxation& rel, const Solution& sol) {
  const ConicProgram& prog = rel.prog;
  Certificate cert;
  cert.lambda = sol.dual_objective;
  cert.map = rel.map;
  cert.min_eig = 0.0;
  for (const GramRef& gr : rel.map.grams) {
    Eigen::MatrixXd G;
    if (gr.scalar) {
      G = Eigen::MatrixXd::Constant(1, 1, sol.s[prog.cone_offset() + gr.nonneg_index]);
      cert.min_eig = std::min(cert.min_eig, G(0, 0));
    } else {
      const int d = (int)gr.basis.size();
      G.resize(d, d);
      for (int b = 0; b < d; ++b) {
        for (int a = 0; a <= b; ++a) {
          double v = sol.s[prog.svec_index(gr.psd_block, a, b)] / ConicProgram::svec_scale(a, b);
          G(a, b) = G(b, a) = v;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
      cert.min_eig = std::min(cert.min_eig, es.eigenvalues().minCoeff());
    }
    cert.gram.push_back(std::move(G));
  }
  return cert;
}

Eigen::MatrixXd assemble_gram(const Certificate& cert, int clique, std::vector<Exp>& basis) {
  basis = unit_basis(cert.map, clique);
  std::map<Exp, int, GradLess> pos;
  for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = (int)i;

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero((int)basis.size(), (int)basis.size());
  bool found = false;
  for (size_t g = 0; g < cert.map.grams.size(); ++g) {
    const GramRef& gr = cert.map.grams[g];
    if (gr.constraint != cert.map.unit || gr.power != 0 || gr.clique != clique) continue;
    found = true;
    const int r = (int)gr.basis.size();
    std::vector<int> loc(r);
    for (int a = 0; a < r; ++a) {
      auto it = pos.find(gr.basis[a]);
      if (it == pos.end()) throw ConfigError("gram block index outside the unit-family basis");
      loc[a] = it->second;
    }
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) G(loc[a], loc[b]) += cert.gram[g](a, b);
    }
  }
  if (!found) throw ConfigError("certificate has no g = 1 family blocks for this clique");
  return G;
}

ExtractResult extract_atoms(const Eigen::MatrixXd& G, const std::vector<Exp>& basis, int n,
                            const std::vector<int>& vars, MatrixKind kind, double tol,
                            unsigned long long seed) {
  ExtractResult res;
  const int omega = (int)basis.size();
  if (G.rows() != omega || G.cols() != omega) {
    res.message = "matrix does not match the basis";
    return res;
  }
  // a Gram row that is numerically zero (monomial uncovered by any block) only
  // injects coordinate vectors into the null space; drop it from the basis
  Eigen::MatrixXd Gp = G;
  std::vector<Exp> bp = basis;
  if (kind == MatrixKind::gram) {
    Eigen::VectorXd rowmax = G.cwiseAbs().rowwise().maxCoeff();
    double scale = std::max(rowmax.maxCoeff(), 1e-300);
    std::vector<int> keep;
    for (int i = 0; i < omega; ++i) {
      if (rowmax(i) > tol * scale) keep.push_back(i);
    }
    if ((int)keep.size() < omega) {
      Gp.resize((int)keep.size(), (int)keep.size());
      bp.clear();
      for (size_t a = 0; a < keep.size(); ++a) {
        bp.push_back(basis[keep[a]]);
        for (size_t b = 0; b < keep.size(); ++b) Gp(a, b) = G(keep[a], keep[b]);
      }
    }
  }
  const int dim = (int)bp.size();
  if (dim == 0) {
    res.message = "matrix is numerically zero";
    return res;
  }
  std::map<Exp, int, GradLess> pos;
  for (int i = 0; i < dim; ++i) pos[bp[i]] = i;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Gp);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double lam_max = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);

  // V: eigenvectors spanning the atom support (null space of a Gram matrix,
  // range of a moment matrix)
  std::vector<int> cols;
  for (int i = 0; i < dim; ++i) {
    bool small = std::abs(ev(i)) <= tol * lam_max;
    if ((kind == MatrixKind::gram) == small) cols.push_back(i);
  }
  const int r = (int)cols.size();
  if (r == 0) {
    res.ok = true;  // empty support: no candidate atoms, not an error
    return res;
  }

  // row-reduce V^T; pivot columns in graded order give the quotient basis
  Eigen::MatrixXd W(r, dim);
  for (int i = 0; i < r; ++i) W.row(i) = es.eigenvectors().col(cols[i]).transpose();
  std::vector<int> piv;
  {
    const double piv_tol = 1e-8;
    int row = 0;
    for (int col = 0; col < dim && row < r; ++col) {
      int p = row;
      for (int i = row + 1; i < r; ++i) {
        if (std::abs(W(i, col)) > std::abs(W(p, col))) p = i;
      }
      if (std::abs(W(p, col)) <= piv_tol) continue;
      W.row(p).swap(W.row(row));
      W.row(row) /= W(row, col);
      for (int i = 0; i < r; ++i) {
        if (i != row) W.row(i) -= W(i, col) * W.row(row);
      }
      piv.push_back(col);
      ++row;
    }
    if ((int)piv.size() < r) {
      res.message = "echelon reduction failed (rank deficiency in the extracted basis)";
      return res;
    }
  }

  // multiplication operators: N_i phi(z) = z_i phi(z) over the pivot monomials
  std::vector<Eigen::MatrixXd> N(vars.size());
  for (size_t vi = 0; vi < vars.size(); ++vi) {
    N[vi].resize(r, r);
    for (int l = 0; l < r; ++l) {
      Exp a = bp[piv[l]];
      a[vars[vi]] += 1;
      auto it = pos.find(a);
      if (it == pos.end()) {
        res.message = "pivot monomial " + exp_to_string(bp[piv[l]]) + " times x_" +
                      std::to_string(vars[vi] + 1) + " leaves the basis";
        return res;
      }
      N[vi].row(l) = W.col(it->second).transpose();
    }
  }
  for (size_t i = 0; i < N.size(); ++i) {
    for (size_t j = i + 1; j < N.size(); ++j) {
      double comm = (N[i] * N[j] - N[j] * N[i]).norm();
      double scale = 1.0 + N[i].norm() * N[j].norm();
      if (comm > 1e-3 * scale) {
        res.message = "multiplication operators do not commute (residual " + std::to_string(comm) + ")";
        return res;
      }
    }
  }

  // random convex combination, ordered real Schur, atoms from the Schur basis
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (double)(rng() >> 11) * 0x1.0p-53; };
  Eigen::MatrixXd Nc = Eigen::MatrixXd::Zero(r, r);
  double total = 0.0;
  std::vector<double> cw(N.size());
  for (size_t i = 0; i < N.size(); ++i) {
    cw[i] = 0.1 + uniform();
    total += cw[i];
  }
  for (size_t i = 0; i < N.size(); ++i) Nc += (cw[i] / total) * N[i];

  Eigen::RealSchur<Eigen::MatrixXd> schur(Nc);
  if (schur.info() != Eigen::Success) {
    res.message = "Schur decomposition failed";
    return res;
  }
  const Eigen::MatrixXd& T = schur.matrixT();
  const Eigen::MatrixXd& Q = schur.matrixU();
  int l = 0;
  while (l < r) {
    if (l + 1 < r && std::abs(T(l + 1, l)) > 1e-8 * (1.0 + std::abs(T(l, l)))) {
      l += 2;  // complex conjugate pair: not a real atom
      continue;
    }
    Eigen::VectorXd q = Q.col(l);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    for (size_t vi = 0; vi < vars.size(); ++vi) z(vars[vi]) = q.dot(N[vi] * q);
    res.atoms.push_back(z);
    ++l;
  }
  res.ok = true;
  return res;
}

VerifyReport verify_solution(const PopInstance& pop, const Eigen::VectorXd& zstar, double lambda,
                             double epsilon, bool squared) {
  if (epsilon <= 0) throw ConfigError("verify_solution: epsilon must be positive");
  VerifyReport rep;
  std::vector<double> z(zstar.data(), zstar.data() + zstar.size());
  auto poly_of = [&](const Poly& p) { return squared ? p.substitute_squares() : p; };

  Poly fc = poly_of(pop.f);
  rep.obj_residual = std::abs(fc.evaluate(z) - lambda);
  rep.obj_scale = fc.norm_max();
  rep.obj_pass = rep.obj_residual <= epsilon * rep.obj_scale;
  rep.pass = rep.obj_pass;
  const int m = pop.m_total();
  for (int i = 1; i <= m; ++i) {
    Poly gc = poly_of(pop.g(i));
    double val = gc.evaluate(z);
    double sc = gc.norm_max();
    rep.con_values.push_back(val);
    rep.con_scales.push_back(sc);
    bool ok = val >= -epsilon * sc;
    rep.con_pass.push_back(ok);
    rep.pass = rep.pass && ok;
  }
  if (rep.pass) {
    rep.xstar.resize(z.size());
    for (size_t i = 0; i < z.size(); ++i) rep.xstar[i] = squared ? z[i] * z[i] : z[i];
  }
  return rep;
}

namespace {

// pick the atom whose verification is best (pass first, then objective residual)
MinimizerResult best_atom(const PopInstance& pop, const std::vector<Eigen::VectorXd>& atoms,
                          double lambda, double epsilon, bool squared) {
  MinimizerResult out;
  if (atoms.empty()) {
    out.message = "no real atoms extracted";
    return out;
  }
  int best = -1;
  VerifyReport best_rep;
  for (size_t a = 0; a < atoms.size(); ++a) {
    VerifyReport rep = verify_solution(pop, atoms[a], lambda, epsilon, squared);
    bool better = best < 0 || (rep.pass && !best_rep.pass) ||
                  (rep.pass == best_rep.pass && rep.obj_residual < best_rep.obj_residual);
    if (better) {
      best = (int)a;
      best_rep = rep;
    }
  }
  out.zstar = atoms[best];
  out.report = best_rep;
  if (!best_rep.pass) {
    out.message = "extracted point failed verification";
    return out;
  }
  out.ok = true;
  out.xstar = best_rep.xstar;
  return out;
}

// Every cover block pairs monomials of equal exponent parity, so the unit
// Gram is block diagonal across parity classes and the all-even block is a
// matrix over x-monomials of half degree.  Extracting there quotients out the
// sign degeneracy of z and yields atoms in x directly.
Eigen::MatrixXd even_restrict(const Eigen::MatrixXd& G, const std::vector<Exp>& basis,
                              std::vector<Exp>& xbasis) {
  std::vector<int> sel;
  xbasis.clear();
  for (size_t i = 0; i < basis.size(); ++i) {
    bool even = true;
    for (int e : basis[i]) {
      if (e % 2) {
        even = false;
        break;
      }
    }
    if (!even) continue;
    sel.push_back((int)i);
    Exp h = basis[i];
    for (auto& e : h) e /= 2;
    xbasis.push_back(h);
  }
  Eigen::MatrixXd Gx((int)sel.size(), (int)sel.size());
  for (size_t a = 0; a < sel.size(); ++a) {
    for (size_t b = 0; b < sel.size(); ++b) Gx(a, b) = G(sel[a], sel[b]);
  }
  return Gx;
}

void atoms_to_z(std::vector<Eigen::VectorXd>& atoms) {
  for (auto& a : atoms) {
    for (int i = 0; i < a.size(); ++i) a(i) = std::sqrt(std::max(a(i), 0.0));
  }
}

}  // namespace

MinimizerResult extract_minimizer(const PopInstance& pop, const Certificate& cert,
                                  double epsilon, double tol) {
  std::vector<Exp> basis, xbasis;
  Eigen::MatrixXd G = assemble_gram(cert, -1, basis);
  Eigen::MatrixXd Gx = even_restrict(G, basis, xbasis);
  std::vector<int> vars(pop.n);
  for (int i = 0; i < pop.n; ++i) vars[i] = i;
  ExtractResult er = extract_atoms(Gx, xbasis, pop.n, vars, MatrixKind::gram, tol);
  if (!er.ok) {
    MinimizerResult out;
    out.message = "extraction failed: " + er.message;
    return out;
  }
  atoms_to_z(er.atoms);
  return best_atom(pop, er.atoms, cert.lambda, epsilon, true);
}

MinimizerResult extract_sparse(const PopInstance& pop, const Certificate& cert,
                               double epsilon, double tol) {
  MinimizerResult out;
  const CliqueStructure& cs = cert.map.cliques;
  if (cs.cliques.empty()) return extract_minimizer(pop, cert, epsilon, tol);

  Eigen::VectorXd z = Eigen::VectorXd::Zero(pop.n);
  std::vector<int> owner(pop.n, -1);  // clique that set each coordinate
  for (int c = 0; c < (int)cs.cliques.size(); ++c) {
    std::vector<Exp> basis, xbasis;
    Eigen::MatrixXd G = assemble_gram(cert, c, basis);
    Eigen::MatrixXd Gx = even_restrict(G, basis, xbasis);
    ExtractResult er = extract_atoms(Gx, xbasis, pop.n, cs.cliques[c], MatrixKind::gram, tol);
    if (!er.ok) {
      out.message = "extraction failed on clique " + std::to_string(c + 1) + ": " + er.message;
      return out;
    }
    if (er.atoms.empty()) {
      out.message = "no real atoms on clique " + std::to_string(c + 1);
      return out;
    }
    if (er.atoms.size() > 1) {
      out.message = "multiple atoms on clique " + std::to_string(c + 1) + "; stitching a unique point is unsupported";
      return out;
    }
    atoms_to_z(er.atoms);
    const Eigen::VectorXd& zc = er.atoms[0];
    for (int j : cs.cliques[c]) {
      if (owner[j] >= 0) {
        // overlap consistency in x = z^2 space (sign of z is immaterial)
        if (std::abs(z(j) * z(j) - zc(j) * zc(j)) > 1e-4) {
          out.message = "stitch failure: cliques " + std::to_string(owner[j] + 1) + " and " +
                        std::to_string(c + 1) + " disagree on x_" + std::to_string(j + 1);
          return out;
        }
      } else {
        z(j) = zc(j);
        owner[j] = c;
      }
    }
  }
  return best_atom(pop, {z}, cert.lambda, epsilon, true);
}

MinimizerResult extract_moment_side(const PopInstance& pop, const Relaxation& rel,
                                    const Solution& sol, double epsilon, double tol) {
  const VariableMap& vm = rel.map;
  if (vm.even_only) throw ConfigError("extract_moment_side: requires full (unsquared) moment indexing");
  auto moment_matrix = [&](const std::vector<Exp>& basis) {
    const int d = (int)basis.size();
    Eigen::MatrixXd M(d, d);
    for (int b = 0; b < d; ++b) {
      for (int a = 0; a <= b; ++a) M(a, b) = M(b, a) = sol.v[vm.moment_index(-1, exp_add(basis[a], basis[b]))];
    }
    return M;
  };

  if (vm.cliques.cliques.empty()) {
    std::vector<Exp> basis = monomials_up_to(pop.n, vm.k);
    std::vector<int> vars(pop.n);
    for (int i = 0; i < pop.n; ++i) vars[i] = i;
    ExtractResult er = extract_atoms(moment_matrix(basis), basis, pop.n, vars, MatrixKind::moment, tol);
    if (!er.ok) {
      MinimizerResult out;
      out.message = "extraction failed: " + er.message;
      return out;
    }
    return best_atom(pop, er.atoms, sol.dual_objective, epsilon, false);
  }

  MinimizerResult out;
  const CliqueStructure& cs = vm.cliques;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(pop.n);
  std::vector<int> owner(pop.n, -1);
  for (int c = 0; c < (int)cs.cliques.size(); ++c) {
    std::vector<Exp> basis = monomials_up_to_clique(pop.n, cs.cliques[c], vm.k);
    ExtractResult er = extract_atoms(moment_matrix(basis), basis, pop.n, cs.cliques[c], MatrixKind::moment, tol);
    if (!er.ok || er.atoms.empty()) {
      out.message = "extraction failed on clique " + std::to_string(c + 1) + (er.ok ? ": no atoms" : ": " + er.message);
      return out;
    }
    if (er.atoms.size() > 1) {
      out.message = "multiple atoms on clique " + std::to_string(c + 1) + "; stitching a unique point is unsupported";
      return out;
    }
    for (int j : cs.cliques[c]) {
      if (owner[j] >= 0) {
        if (std::abs(x(j) - er.atoms[0](j)) > 1e-4) {
          out.message = "stitch failure: cliques " + std::to_string(owner[j] + 1) + " and " +
                        std::to_string(c + 1) + " disagree on x_" + std::to_string(j + 1);
          return out;
        }
      } else {
        x(j) = er.atoms[0](j);
        owner[j] = c;
      }
    }
  }
  return best_atom(pop, {x}, sol.dual_objective, epsilon, false);
}

}  // namespace orx
