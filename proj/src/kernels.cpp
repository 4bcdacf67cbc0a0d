#include "orx/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orx {

Eigen::VectorXd svec_pack(const Eigen::MatrixXd& U) {
  const int d = (int)U.rows();
  const double s2 = std::sqrt(2.0);
  Eigen::VectorXd u(d * (d + 1) / 2);
  int q = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) u(q++) = i == j ? U(i, j) : s2 * U(i, j);
  }
  return u;
}

Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& u, int d) {
  const double is2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd U(d, d);
  int q = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i <= j; ++i) {
      double v = i == j ? u(q) : is2 * u(q);
      U(i, j) = U(j, i) = v;
      ++q;
    }
  }
  return U;
}

Eigen::VectorXd apply_block_inv(const BlockScaling& sc, const Eigen::VectorXd& u) {
  const int d = (int)sc.T.rows();
  if (d == 1) return u / (sc.T(0, 0) * sc.T(0, 0));
  Eigen::MatrixXd U = svec_unpack(u, d);
  return svec_pack(sc.Tinv * U * sc.Tinv);
}

Eigen::MatrixXd block_schur_contribution(const TiedBlock& blk, const BlockScaling& sc) {
  const int nloc = (int)blk.loc.size();
  if (nloc == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd HB(blk.B.rows(), nloc);
  for (int j = 0; j < nloc; ++j) HB.col(j) = apply_block_inv(sc, blk.B.col(j));
  return blk.B.transpose() * HB;
}

namespace {

void scatter(const TiedBlock& blk, const Eigen::MatrixXd& C, Eigen::MatrixXd& S) {
  const int nloc = (int)blk.loc.size();
  for (int a = 0; a < nloc; ++a) {
    for (int b = 0; b < nloc; ++b) S(blk.loc[a], blk.loc[b]) += C(a, b);
  }
}

}  // namespace

void schur_accumulate_serial(const std::vector<TiedBlock>& blocks, const std::vector<BlockScaling>& scalings, Eigen::MatrixXd& S) {
  for (size_t b = 0; b < blocks.size(); ++b) scatter(blocks[b], block_schur_contribution(blocks[b], scalings[blocks[b].blk]), S);
}

void schur_accumulate_omp(const std::vector<TiedBlock>& blocks, const std::vector<BlockScaling>& scalings, Eigen::MatrixXd& S) {
  const int nb = (int)blocks.size();
  std::vector<Eigen::MatrixXd> contrib(nb);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int b = 0; b < nb; ++b) contrib[b] = block_schur_contribution(blocks[b], scalings[blocks[b].blk]);
  // fixed-order accumulation keeps the result bitwise equal to the serial path
  for (int b = 0; b < nb; ++b) scatter(blocks[b], contrib[b], S);
}

}  // namespace orx
