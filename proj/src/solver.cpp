#include "orx/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "orx/kernels.hpp"

namespace orx {

std::string status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::primal_infeasible: return "primal-infeasible";
    case SolveStatus::dual_infeasible: return "dual-infeasible";
    case SolveStatus::max_iter: return "max-iter";
    case SolveStatus::numerical_failure: return "numerical-failure";
  }
  return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ConeLayout {
  std::vector<int> dim;  // pseudo-blocks: nonneg scalars as dim 1, then PSD blocks
  std::vector<int> off;  // offset within the cone segment (svec packing)
  int total = 0;
  int nu = 0;  // barrier degree

  static ConeLayout make(const ConicProgram& p) {
    ConeLayout L;
    for (int i = 0; i < p.num_nonneg; ++i) L.dim.push_back(1);
    for (int d : p.psd_dims) L.dim.push_back(d);
    for (int d : L.dim) {
      L.off.push_back(L.total);
      L.total += d * (d + 1) / 2;
      L.nu += d;
    }
    return L;
  }
  int nblocks() const { return (int)dim.size(); }
  int svlen(int b) const { return dim[b] * (dim[b] + 1) / 2; }
};

VectorXd cone_identity(const ConeLayout& L) {
  VectorXd e = VectorXd::Zero(L.total);
  for (int b = 0; b < L.nblocks(); ++b) {
    for (int i = 0; i < L.dim[b]; ++i) e(L.off[b] + i * (i + 1) / 2 + i) = 1.0;
  }
  return e;
}

struct SparseRow {
  std::vector<std::pair<int, double>> fr;  // free-part coefficients
  std::vector<std::pair<int, double>> cn;  // cone-part coefficients (cone-relative index)
};

struct Scalings {
  std::vector<BlockScaling> blk;
  bool ok = true;
};

Scalings compute_scalings(const ConeLayout& L, const VectorXd& x, const VectorXd& s) {
  Scalings sc;
  sc.blk.resize(L.nblocks());
  for (int b = 0; b < L.nblocks(); ++b) {
    const int d = L.dim[b];
    BlockScaling& B = sc.blk[b];
    if (d == 1) {
      double xv = x(L.off[b]), sv = s(L.off[b]);
      if (!(xv > 0 && sv > 0)) {
        sc.ok = false;
        return sc;
      }
      double w = std::sqrt(xv / sv);
      B.T = MatrixXd::Constant(1, 1, w);
      B.Tinv = MatrixXd::Constant(1, 1, 1.0 / w);
      B.R = MatrixXd::Constant(1, 1, std::sqrt(w));
      B.Rinv = MatrixXd::Constant(1, 1, 1.0 / std::sqrt(w));
      B.lam = VectorXd::Constant(1, std::sqrt(xv * sv));
      continue;
    }
    MatrixXd X = svec_unpack(x.segment(L.off[b], L.svlen(b)), d);
    MatrixXd S = svec_unpack(s.segment(L.off[b], L.svlen(b)), d);
    Eigen::LLT<MatrixXd> cx(X), cs(S);
    if (cx.info() != Eigen::Success || cs.info() != Eigen::Success) {
      sc.ok = false;
      return sc;
    }
    MatrixXd L1 = cx.matrixL();
    MatrixXd L2 = cs.matrixL();
    Eigen::JacobiSVD<MatrixXd> svd(L2.transpose() * L1, Eigen::ComputeFullU | Eigen::ComputeFullV);
    VectorXd sig = svd.singularValues();
    if (!(sig.minCoeff() > 0)) {
      sc.ok = false;
      return sc;
    }
    VectorXd isqrt = sig.array().sqrt().inverse();
    B.R = L1 * svd.matrixV() * isqrt.asDiagonal();
    B.Rinv = isqrt.asDiagonal() * svd.matrixU().transpose() * L2.transpose();
    B.T = B.R * B.R.transpose();
    B.Tinv = B.Rinv.transpose() * B.Rinv;
    B.lam = sig;
  }
  return sc;
}

VectorXd apply_H(const ConeLayout& L, const Scalings& sc, const VectorXd& u) {
  VectorXd out(L.total);
  for (int b = 0; b < L.nblocks(); ++b) {
    const int d = L.dim[b], o = L.off[b], len = L.svlen(b);
    if (d == 1) out(o) = sc.blk[b].T(0, 0) * sc.blk[b].T(0, 0) * u(o);
    else out.segment(o, len) = svec_pack(sc.blk[b].T * svec_unpack(u.segment(o, len), d) * sc.blk[b].T);
  }
  return out;
}

// scaled directions per block
MatrixXd scaled_dir_v(const BlockScaling& B, const VectorXd& dv_block, int d) {
  if (d == 1) return MatrixXd::Constant(1, 1, dv_block(0) / B.T(0, 0) * B.Rinv(0, 0) * B.R(0, 0));  // dv/w
  return B.Rinv * svec_unpack(dv_block, d) * B.Rinv.transpose();
}
MatrixXd scaled_dir_s(const BlockScaling& B, const VectorXd& ds_block, int d) {
  if (d == 1) return MatrixXd::Constant(1, 1, ds_block(0) * B.T(0, 0));  // w*ds ... T=w
  return B.R.transpose() * svec_unpack(ds_block, d) * B.R;
}

double min_step(const BlockScaling& B, const MatrixXd& Dscaled) {
  const int d = (int)B.lam.size();
  if (d == 1) {
    double m = Dscaled(0, 0) / B.lam(0);
    return m < 0 ? -1.0 / m : kInf;
  }
  MatrixXd Ms(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) Ms(i, j) = Dscaled(i, j) / std::sqrt(B.lam(i) * B.lam(j));
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ms, Eigen::EigenvaluesOnly);
  double m = es.eigenvalues().minCoeff();
  return m < 0 ? -1.0 / m : kInf;
}

struct Problem {
  ConeLayout L;
  int nf = 0, nrows = 0;
  std::vector<SparseRow> rows;
  VectorXd b, cu, cc;
  std::vector<int> rc_rows, rp_rows;
  bool structured = false;
  std::vector<TiedBlock> tied;

  void init(const ConicProgram& p) {
    L = ConeLayout::make(p);
    nf = p.num_free;
    nrows = (int)p.rows.size();
    rows.resize(nrows);
    b.resize(nrows);
    for (int r = 0; r < nrows; ++r) {
      b(r) = p.rows[r].rhs;
      for (const auto& [idx, val] : p.rows[r].coeffs) {
        if (idx < nf) rows[r].fr.push_back({idx, val});
        else rows[r].cn.push_back({idx - nf, val});
      }
      (rows[r].cn.empty() ? rp_rows : rc_rows).push_back(r);
    }
    cu.resize(nf);
    for (int i = 0; i < nf; ++i) cu(i) = p.c[i];
    cc.resize(L.total);
    for (int i = 0; i < L.total; ++i) cc(i) = p.c[nf + i];

    // structured iff each cone-touching row has exactly one cone coefficient
    // and every partially-tied pseudo-block is fully tied
    std::vector<int> tie_row(L.total, -1);
    std::vector<double> tie_coef(L.total, 0.0);
    structured = true;
    for (int r : rc_rows) {
      if (rows[r].cn.size() != 1) {
        structured = false;
        break;
      }
      auto [ci, cv] = rows[r].cn[0];
      if (tie_row[ci] != -1 || cv == 0.0) {
        structured = false;
        break;
      }
      tie_row[ci] = r;
      tie_coef[ci] = cv;
    }
    if (structured) {
      for (int blk = 0; blk < L.nblocks() && structured; ++blk) {
        int len = L.svlen(blk), o = L.off[blk], t = 0;
        for (int q = 0; q < len; ++q) t += tie_row[o + q] != -1 ? 1 : 0;
        if (t != 0 && t != len) structured = false;
      }
    }
    if (structured) {
      for (int blk = 0; blk < L.nblocks(); ++blk) {
        int len = L.svlen(blk), o = L.off[blk];
        if (tie_row[o] == -1) continue;
        TiedBlock tb;
        tb.dim = L.dim[blk];
        tb.blk = blk;
        tb.rows.resize(len);
        tb.e.resize(len);
        std::vector<int> locmap;
        for (int q = 0; q < len; ++q) {
          tb.rows[q] = tie_row[o + q];
          tb.e[q] = tie_coef[o + q];
          for (const auto& [fi, fv] : rows[tb.rows[q]].fr) locmap.push_back(fi);
        }
        std::sort(locmap.begin(), locmap.end());
        locmap.erase(std::unique(locmap.begin(), locmap.end()), locmap.end());
        tb.loc = locmap;
        tb.B = MatrixXd::Zero(len, (int)locmap.size());
        for (int q = 0; q < len; ++q) {
          for (const auto& [fi, fv] : rows[tb.rows[q]].fr) {
            int j = (int)(std::lower_bound(locmap.begin(), locmap.end(), fi) - locmap.begin());
            tb.B(q, j) = fv / tb.e[q];
          }
        }
        tied.push_back(std::move(tb));
      }
    }
  }

  VectorXd apply_A(const VectorXd& u, const VectorXd& xc) const {
    VectorXd out = VectorXd::Zero(nrows);
    for (int r = 0; r < nrows; ++r) {
      double v = 0;
      for (const auto& [i, a] : rows[r].fr) v += a * u(i);
      for (const auto& [i, a] : rows[r].cn) v += a * xc(i);
      out(r) = v;
    }
    return out;
  }
  VectorXd apply_AuT(const VectorXd& z) const {
    VectorXd out = VectorXd::Zero(nf);
    for (int r = 0; r < nrows; ++r) {
      for (const auto& [i, a] : rows[r].fr) out(i) += a * z(r);
    }
    return out;
  }
  VectorXd apply_AcT(const VectorXd& z) const {
    VectorXd out = VectorXd::Zero(L.total);
    for (int r : rc_rows) {
      for (const auto& [i, a] : rows[r].cn) out(i) += a * z(r);
    }
    return out;
  }
  // A_c w over all rows (zero on pure rows)
  VectorXd apply_Ac(const VectorXd& w) const {
    VectorXd out = VectorXd::Zero(nrows);
    for (int r : rc_rows) {
      double v = 0;
      for (const auto& [i, a] : rows[r].cn) v += a * w(i);
      out(r) = v;
    }
    return out;
  }
  VectorXd apply_Au(const VectorXd& u) const {
    VectorXd out = VectorXd::Zero(nrows);
    for (int r = 0; r < nrows; ++r) {
      double v = 0;
      for (const auto& [i, a] : rows[r].fr) v += a * u(i);
      out(r) = v;
    }
    return out;
  }
};

struct KktFactor {
  const Problem* P = nullptr;
  const Scalings* sc = nullptr;
  bool use_omp = false;
  bool general = false;

  Eigen::LLT<MatrixXd> Sfact, Gfact, Mfact;
  MatrixXd Pmat;   // npure x nf
  MatrixXd Bfree;  // nrc x nf (general path)

  bool prepare(const Problem& prob, const Scalings& scal) {
    P = &prob;
    sc = &scal;
    general = !prob.structured;
    const int nf = prob.nf;
    const int npure = (int)prob.rp_rows.size();

    if (general) {
      const int nrc = (int)prob.rc_rows.size();
      MatrixXd Ac = MatrixXd::Zero(nrc, prob.L.total);
      Bfree = MatrixXd::Zero(nrc, nf);
      for (int q = 0; q < nrc; ++q) {
        int r = prob.rc_rows[q];
        for (const auto& [i, a] : prob.rows[r].cn) Ac(q, i) = a;
        for (const auto& [i, a] : prob.rows[r].fr) Bfree(q, i) = a;
      }
      MatrixXd HAcT(prob.L.total, nrc);
      for (int q = 0; q < nrc; ++q) HAcT.col(q) = apply_H(prob.L, scal, Ac.row(q).transpose());
      MatrixXd M = Ac * HAcT;
      if (!factor_reg(Mfact, M, 1e-12)) return false;
    }

    MatrixXd S = MatrixXd::Zero(nf, nf);
    if (general) {
      if (nf > 0) S = Bfree.transpose() * Mfact.solve(Bfree);
    } else if (use_omp) {
      schur_accumulate_omp(prob.tied, scal.blk, S);
    } else {
      schur_accumulate_serial(prob.tied, scal.blk, S);
    }
    if (!factor_reg(Sfact, S, 1e-11)) return false;

    Pmat = MatrixXd::Zero(npure, nf);
    for (int q = 0; q < npure; ++q) {
      for (const auto& [i, a] : prob.rows[prob.rp_rows[q]].fr) Pmat(q, i) = a;
    }
    if (npure > 0) {
      MatrixXd G = Pmat * Sfact.solve(Pmat.transpose());
      if (!factor_reg(Gfact, G, 1e-11)) return false;
    }
    return true;
  }

  VectorXd apply_Minv(const VectorXd& x) const {
    VectorXd out = VectorXd::Zero(P->nrows);
    if (general) {
      const int nrc = (int)P->rc_rows.size();
      VectorXd xr(nrc);
      for (int q = 0; q < nrc; ++q) xr(q) = x(P->rc_rows[q]);
      VectorXd yr = Mfact.solve(xr);
      for (int q = 0; q < nrc; ++q) out(P->rc_rows[q]) = yr(q);
      return out;
    }
    for (const TiedBlock& tb : P->tied) {
      const int len = (int)tb.rows.size();
      VectorXd u(len);
      for (int q = 0; q < len; ++q) u(q) = x(tb.rows[q]) / tb.e[q];
      VectorXd w = apply_block_inv(sc->blk[tb.blk], u);
      for (int q = 0; q < len; ++q) out(tb.rows[q]) = w(q) / tb.e[q];
    }
    return out;
  }

  VectorXd apply_M(const VectorXd& x) const {
    // M x = A_c H A_c' x; valid on both paths
    return P->apply_Ac(apply_H(P->L, *sc, P->apply_AcT(x)));
  }

  void solve(const VectorXd& rhs_rows, const VectorXd& rhs_free, VectorXd& dz, VectorXd& du) const {
    const Problem& pr = *P;
    const int npure = (int)pr.rp_rows.size();
    auto once = [&](const VectorXd& rr, const VectorXd& rf, VectorXd& z, VectorXd& u) {
      VectorXd Minv_u1 = apply_Minv(rr);
      VectorXd w1 = rf - rc_free_T(Minv_u1);
      VectorXd dzp(npure);
      if (npure > 0) {
        VectorXd w2(npure);
        for (int q = 0; q < npure; ++q) w2(q) = rr(pr.rp_rows[q]);
        dzp = Gfact.solve(w2 + Pmat * Sfact.solve(w1));
        u = Sfact.solve(VectorXd(Pmat.transpose() * dzp - w1));
      } else {
        u = Sfact.solve(VectorXd(-w1));
      }
      z = apply_Minv(rr - rc_free_apply(u));
      for (int q = 0; q < npure; ++q) z(pr.rp_rows[q]) = dzp(q);
    };
    once(rhs_rows, rhs_free, dz, du);
    // iterative refinement on the saddle system until the residual stops improving
    const double scale = 1.0 + rhs_rows.norm() + rhs_free.norm();
    double prev = kInf;
    for (int round = 0; round < 4; ++round) {
      VectorXd res_rows = rhs_rows - apply_M(dz) - pr.apply_Au(du);
      VectorXd res_free = rhs_free - pr.apply_AuT(dz);
      double rn = std::sqrt(res_rows.squaredNorm() + res_free.squaredNorm());
      if (rn <= 1e-14 * scale || rn >= 0.5 * prev) break;
      prev = rn;
      VectorXd cz, cu2;
      once(res_rows, res_free, cz, cu2);
      dz += cz;
      du += cu2;
    }
  }

 private:
  static bool factor_reg(Eigen::LLT<MatrixXd>& fact, const MatrixXd& M, double base) {
    const int n = (int)M.rows();
    if (n == 0) {
      fact.compute(MatrixXd::Zero(0, 0));
      return true;
    }
    double dl = base * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    for (int t = 0; t < 5; ++t) {
      fact.compute(M + dl * MatrixXd::Identity(n, n));
      if (fact.info() == Eigen::Success) return true;
      dl *= 100;
    }
    return false;
  }
  // B' y over cone-touching rows only
  VectorXd rc_free_T(const VectorXd& y) const {
    VectorXd out = VectorXd::Zero(P->nf);
    for (int r : P->rc_rows) {
      for (const auto& [i, a] : P->rows[r].fr) out(i) += a * y(r);
    }
    return out;
  }
  // A_u u over cone-touching rows only
  VectorXd rc_free_apply(const VectorXd& u) const {
    VectorXd out = VectorXd::Zero(P->nrows);
    for (int r : P->rc_rows) {
      double v = 0;
      for (const auto& [i, a] : P->rows[r].fr) v += a * u(i);
      out(r) = v;
    }
    return out;
  }
};

}  // namespace

Solution solve(const ConicProgram& prog, const SolveSettings& settings) {
  prog.validate();
  Problem P;
  P.init(prog);
  const ConeLayout& L = P.L;
  const int nf = P.nf, nrows = P.nrows, nc = L.total;
  const double nu1 = L.nu + 1.0;

  Solution sol;
  if (nc == 0 && nrows == 0) {
    sol.status = SolveStatus::optimal;
    sol.v.assign(prog.total_vars(), 0.0);
    return sol;
  }

  const double bnorm = std::max(1.0, P.b.norm());
  double cn2 = 0;
  for (double ci : prog.c) cn2 += ci * ci;
  const double cnorm = std::max(1.0, std::sqrt(cn2));

  // iterate
  VectorXd u = VectorXd::Zero(nf);
  VectorXd x = cone_identity(L);
  VectorXd z = VectorXd::Zero(nrows);
  VectorXd s = cone_identity(L);
  double tau = 1.0, kappa = 1.0;

  auto fill_solution = [&](SolveStatus st, int iters) {
    sol.status = st;
    sol.iterations = iters;
    double scale_tau = tau > 0 ? tau : 1.0;
    sol.v.resize(prog.total_vars());
    for (int i = 0; i < nf; ++i) sol.v[i] = u(i) / scale_tau;
    for (int i = 0; i < nc; ++i) sol.v[nf + i] = x(i) / scale_tau;
    sol.z.resize(nrows);
    for (int r = 0; r < nrows; ++r) sol.z[r] = z(r) / scale_tau;
    sol.s.assign(prog.total_vars(), 0.0);
    for (int i = 0; i < nc; ++i) sol.s[nf + i] = s(i) / scale_tau;
    sol.primal_objective = (P.cu.dot(u) + P.cc.dot(x)) / scale_tau;
    sol.dual_objective = P.b.dot(z) / scale_tau;
    VectorXd rp = P.apply_A(u, x) - P.b * tau;
    sol.primal_residual = rp.norm() / (scale_tau * bnorm);
    VectorXd rd_free = P.cu * tau - P.apply_AuT(z);
    VectorXd rd_cone = P.cc * tau - P.apply_AcT(z) - s;
    sol.dual_residual = std::sqrt(rd_free.squaredNorm() + rd_cone.squaredNorm()) / (scale_tau * cnorm);
    double gap = x.dot(s) / (scale_tau * scale_tau);
    sol.rel_gap = gap / std::max({1.0, std::abs(sol.primal_objective), std::abs(sol.dual_objective)});
  };

  KktFactor kkt;
#ifdef _OPENMP
  kkt.use_omp = settings.parallel;
#else
  kkt.use_omp = false;
#endif

  // best-so-far iterate: near convergence the scaled KKT system can become too
  // ill-conditioned to advance; on breakdown we fall back to this state
  struct Best {
    double merit = kInf;
    VectorXd u, x, z, s;
    double tau = 1, kappa = 1;
  } best;
  const double cert_tol = 1e-7;  // threshold certified by an "optimal" status
  auto restore_best = [&]() {
    if (best.merit == kInf) return;
    u = best.u;
    x = best.x;
    z = best.z;
    s = best.s;
    tau = best.tau;
    kappa = best.kappa;
  };

  int iter = 0;
  for (; iter < settings.max_iter; ++iter) {
    // residuals
    VectorXd rp = P.apply_A(u, x) - P.b * tau;                    // A v - b tau
    VectorXd rd_u = P.cu * tau - P.apply_AuT(z);                  // -A_u' z + c_u tau
    VectorXd rd_c = P.cc * tau - P.apply_AcT(z) - s;              // -A_c' z + c_c tau - s
    double rg = P.b.dot(z) - P.cu.dot(u) - P.cc.dot(x) - kappa;   // b'z - c'v - kappa
    double mu = (x.dot(s) + tau * kappa) / nu1;

    // convergence
    double pobj = (P.cu.dot(u) + P.cc.dot(x)) / tau;
    double dobj = P.b.dot(z) / tau;
    double pres = rp.norm() / (tau * bnorm);
    double dres = std::sqrt(rd_u.squaredNorm() + rd_c.squaredNorm()) / (tau * cnorm);
    double gap = x.dot(s) / (tau * tau);
    double relgap = gap / std::max({1.0, std::abs(pobj), std::abs(dobj)});
    if (settings.verbose) {
      std::printf("it %3d  pobj % .8e dobj % .8e pres %.2e dres %.2e gap %.2e tau %.2e kap %.2e\n", iter, pobj, dobj, pres, dres, relgap, tau, kappa);
    }
    if (pres <= settings.tol_feas && dres <= settings.tol_feas && relgap <= settings.tol_gap) {
      fill_solution(SolveStatus::optimal, iter);
      return sol;
    }
    double merit = std::max({pres, dres, relgap});
    if (merit < best.merit) {
      best = {merit, u, x, z, s, tau, kappa};
    } else if (best.merit < 1e-5 && merit > 100 * best.merit) {
      // numerical breakdown after near-convergence: report the best iterate
      restore_best();
      fill_solution(best.merit <= cert_tol ? SolveStatus::optimal : SolveStatus::numerical_failure, iter);
      return sol;
    }
    // infeasibility certificates
    {
      double bz = P.b.dot(z);
      if (bz > 1e-10) {
        VectorXd dc_u = P.apply_AuT(z);
        VectorXd dc_c = P.apply_AcT(z) + s;
        double res = std::sqrt(dc_u.squaredNorm() + dc_c.squaredNorm());
        if (res / bz <= 1e-9 * cnorm) {
          for (int r = 0; r < nrows; ++r) z(r) /= bz;
          for (int i = 0; i < nc; ++i) s(i) /= bz;
          tau = 0;
          fill_solution(SolveStatus::primal_infeasible, iter);
          return sol;
        }
      }
      double cv = -(P.cu.dot(u) + P.cc.dot(x));
      if (cv > 1e-10) {
        double res = P.apply_A(u, x).norm();
        if (res / cv <= 1e-9 * bnorm) {
          u /= cv;
          x /= cv;
          tau = 0;
          fill_solution(SolveStatus::dual_infeasible, iter);
          return sol;
        }
      }
    }

    Scalings sc = compute_scalings(L, x, s);
    if (!sc.ok || !kkt.prepare(P, sc)) {
      restore_best();
      fill_solution(best.merit <= cert_tol ? SolveStatus::optimal : SolveStatus::numerical_failure, iter);
      return sol;
    }

    // second KKT solve (independent of gamma): rhs = A_c H c_c + b ; c_u
    VectorXd Hcc = apply_H(L, sc, P.cc);
    VectorXd dz2, du2;
    kkt.solve(P.apply_Ac(Hcc) + P.b, P.cu, dz2, du2);
    VectorXd dv2 = apply_H(L, sc, P.apply_AcT(dz2)) - Hcc;

    auto direction = [&](double gamma, const VectorXd& q, double corr_tk, VectorXd& dz, VectorXd& du, VectorXd& dvc, VectorXd& ds, double& dtau, double& dkappa) {
      double om = 1.0 - gamma;
      VectorXd rdp_c = om * rd_c;
      VectorXd qt = q - apply_H(L, sc, rdp_c);
      VectorXd rhs_rows = -om * rp - P.apply_Ac(qt);
      VectorXd dz1, du1;
      kkt.solve(rhs_rows, om * rd_u, dz1, du1);
      VectorXd dv1 = qt + apply_H(L, sc, P.apply_AcT(dz1));
      double rtk = gamma * mu - tau * kappa - corr_tk;
      double E1 = P.b.dot(dz1) - P.cu.dot(du1) - P.cc.dot(dv1) - rtk / tau + om * rg;
      double E2 = P.b.dot(dz2) - P.cu.dot(du2) - P.cc.dot(dv2) + kappa / tau;
      dtau = -E1 / E2;
      dz = dz1 + dtau * dz2;
      du = du1 + dtau * du2;
      dvc = dv1 + dtau * dv2;
      ds = -P.apply_AcT(dz) + P.cc * dtau + rdp_c;
      dkappa = (rtk - kappa * dtau) / tau;
    };

    auto max_alpha = [&](const VectorXd& dvc, const VectorXd& ds, double dtau, double dkappa, std::vector<MatrixXd>* sv, std::vector<MatrixXd>* ss) {
      double a = kInf;
      for (int b2 = 0; b2 < L.nblocks(); ++b2) {
        const int d = L.dim[b2], o = L.off[b2], len = L.svlen(b2);
        MatrixXd dV = scaled_dir_v(sc.blk[b2], dvc.segment(o, len), d);
        MatrixXd dS = scaled_dir_s(sc.blk[b2], ds.segment(o, len), d);
        a = std::min(a, min_step(sc.blk[b2], dV));
        a = std::min(a, min_step(sc.blk[b2], dS));
        if (sv) (*sv)[b2] = dV;
        if (ss) (*ss)[b2] = dS;
      }
      if (dtau < 0) a = std::min(a, -tau / dtau);
      if (dkappa < 0) a = std::min(a, -kappa / dkappa);
      return a;
    };

    // affine (predictor) direction: gamma = 0, q = -x
    VectorXd dz_a, du_a, dv_a, ds_a;
    double dtau_a, dkap_a;
    direction(0.0, -x, 0.0, dz_a, du_a, dv_a, ds_a, dtau_a, dkap_a);
    std::vector<MatrixXd> sv(L.nblocks()), ss(L.nblocks());
    double amax_a = max_alpha(dv_a, ds_a, dtau_a, dkap_a, &sv, &ss);
    double alpha_a = std::min(1.0, amax_a);
    double mu_aff = ((x + alpha_a * dv_a).dot(s + alpha_a * ds_a) + (tau + alpha_a * dtau_a) * (kappa + alpha_a * dkap_a)) / nu1;
    double gamma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3.0);

    // corrector target per block: gamma mu I - Lam^2 - (dVa dSa + dSa dVa)/2
    std::vector<MatrixXd> rhs_blocks(L.nblocks());
    for (int b2 = 0; b2 < L.nblocks(); ++b2) {
      const int d = L.dim[b2];
      MatrixXd corrM = 0.5 * (sv[b2] * ss[b2] + ss[b2] * sv[b2]);
      MatrixXd Rhs = -corrM;
      for (int i = 0; i < d; ++i) Rhs(i, i) += gamma * mu - sc.blk[b2].lam(i) * sc.blk[b2].lam(i);
      rhs_blocks[b2] = Rhs;
    }
    VectorXd q(nc);
    for (int b2 = 0; b2 < L.nblocks(); ++b2) {
      const int d = L.dim[b2], o = L.off[b2], len = L.svlen(b2);
      const BlockScaling& B = sc.blk[b2];
      MatrixXd X(d, d);
      for (int i2 = 0; i2 < d; ++i2) {
        for (int j2 = 0; j2 < d; ++j2) X(i2, j2) = 2.0 * rhs_blocks[b2](i2, j2) / (B.lam(i2) + B.lam(j2));
      }
      if (d == 1) q(o) = B.T(0, 0) * X(0, 0);
      else q.segment(o, len) = svec_pack(B.R * X * B.R.transpose());
    }

    VectorXd dz, du, dvc, ds;
    double dtau, dkappa;
    direction(gamma, q, dtau_a * dkap_a, dz, du, dvc, ds, dtau, dkappa);
    double amax = max_alpha(dvc, ds, dtau, dkappa, nullptr, nullptr);
    double alpha = std::min(1.0, settings.step_fraction * amax);
    if (!(alpha > 1e-12) || !std::isfinite(alpha)) {
      restore_best();
      fill_solution(best.merit <= cert_tol ? SolveStatus::optimal : SolveStatus::numerical_failure, iter);
      return sol;
    }

    u += alpha * du;
    x += alpha * dvc;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
  }
  restore_best();
  fill_solution(best.merit <= cert_tol ? SolveStatus::optimal : SolveStatus::max_iter, iter);
  return sol;
}

}  // namespace orx
