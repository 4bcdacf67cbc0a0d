#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "orx/kernels.hpp"

using namespace orx;

namespace {

struct Fixture {
  std::vector<TiedBlock> blocks;
  std::vector<BlockScaling> scalings;
  int nfree = 0;
};

Fixture make_fixture(int nblocks, int dim, int nfree, int nloc, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&]() { return (double)(rng() >> 11) * 0x1.0p-53 - 0.5; };
  Fixture fx;
  fx.nfree = nfree;
  for (int b = 0; b < nblocks; ++b) {
    BlockScaling sc;
    Eigen::MatrixXd A(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) A(i, j) = uni();
    }
    Eigen::MatrixXd T = A * A.transpose() + Eigen::MatrixXd::Identity(dim, dim);
    sc.T = T;
    sc.Tinv = T.inverse();
    fx.scalings.push_back(sc);

    TiedBlock blk;
    blk.dim = dim;
    blk.blk = b;
    for (int j = 0; j < nloc; ++j) blk.loc.push_back((int)(rng() % (unsigned)nfree));
    std::sort(blk.loc.begin(), blk.loc.end());
    blk.loc.erase(std::unique(blk.loc.begin(), blk.loc.end()), blk.loc.end());
    blk.B.resize(dim * (dim + 1) / 2, (int)blk.loc.size());
    for (int i = 0; i < blk.B.rows(); ++i) {
      for (int j = 0; j < blk.B.cols(); ++j) blk.B(i, j) = uni();
    }
    fx.blocks.push_back(std::move(blk));
  }
  return fx;
}

double time_ms(const std::function<void()>& f, int reps) {
  f();  // warm up
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
  std::printf("%8s %6s %7s | %12s %12s %8s %s\n", "nblocks", "dim", "nfree", "serial(ms)", "omp(ms)", "speedup", "bitwise");
  for (auto [nblocks, dim, nfree] : {std::tuple{64, 8, 128}, {256, 8, 256}, {256, 16, 512}, {1024, 16, 1024}, {512, 32, 1024}}) {
    Fixture fx = make_fixture(nblocks, dim, nfree, 2 * dim, 12345);
    Eigen::MatrixXd S1 = Eigen::MatrixXd::Zero(nfree, nfree);
    Eigen::MatrixXd S2 = Eigen::MatrixXd::Zero(nfree, nfree);
    double ts = time_ms([&] { S1.setZero(); schur_accumulate_serial(fx.blocks, fx.scalings, S1); }, 5);
    double tp = time_ms([&] { S2.setZero(); schur_accumulate_omp(fx.blocks, fx.scalings, S2); }, 5);
    bool same = (S1 - S2).cwiseAbs().maxCoeff() == 0.0;
    std::printf("%8d %6d %7d | %12.3f %12.3f %7.2fx %s\n", nblocks, dim, nfree, ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return 0;
}
