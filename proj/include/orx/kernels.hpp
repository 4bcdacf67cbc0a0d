#pragma once

#include <Eigen/Dense>
#include <vector>

namespace orx {

// Nesterov-Todd scaling data for one cone block (dim 1 = nonnegative scalar).
struct BlockScaling {
  Eigen::MatrixXd R, Rinv;   // V = R R', lambda = R^{-1} V R^{-T} = R' S R
  Eigen::MatrixXd T, Tinv;   // T = R R', H = T (x)_s T
  Eigen::VectorXd lam;       // scaled point (diagonal)
};

// One cone block whose svec entries are each tied to the free variables by
// exactly one equality row (the structured KKT path).
struct TiedBlock {
  int dim = 0;
  int blk = 0;             // pseudo-block index into the scalings array
  std::vector<int> rows;   // row id per svec coordinate, column-major upper order
  std::vector<double> e;   // cone coefficient of that row
  std::vector<int> loc;    // free-variable ids appearing in these rows
  Eigen::MatrixXd B;       // svec_len x |loc|: free coefficients, row q scaled by 1/e[q]
};

// svec packing (off-diagonals carry sqrt 2)
Eigen::VectorXd svec_pack(const Eigen::MatrixXd& U);
Eigen::MatrixXd svec_unpack(const Eigen::VectorXd& u, int d);

// W = Tinv * smat(u) * Tinv, packed again: applies H^{-1} to one svec vector.
Eigen::VectorXd apply_block_inv(const BlockScaling& sc, const Eigen::VectorXd& u);

// Local Schur contribution C_b = B' H_b^{-1} B for one tied block.
Eigen::MatrixXd block_schur_contribution(const TiedBlock& blk, const BlockScaling& sc);

// S += sum over blocks of the scattered C_b.  The OpenMP variant computes the
// C_b in parallel but accumulates in fixed block order, so both produce
// bitwise identical results.
void schur_accumulate_serial(const std::vector<TiedBlock>& blocks, const std::vector<BlockScaling>& scalings, Eigen::MatrixXd& S);
void schur_accumulate_omp(const std::vector<TiedBlock>& blocks, const std::vector<BlockScaling>& scalings, Eigen::MatrixXd& S);

// scalings are indexed by TiedBlock::blk

}  // namespace orx
