#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "orx/common.hpp"

namespace orx {

// Standard-form block conic program
//
//   min  c'v   s.t.  A v = b,   v in R^{nf} x R_+^{ns} x S_+^{d_1} x ... x S_+^{d_B}
//
// PSD blocks are stored in scaled svec form (off-diagonals multiplied by
// sqrt(2)) so the cone inner product is the plain dot product.
struct ConicProgram {
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable index, value), indices strictly increasing
    double rhs = 0.0;
    std::string label;
  };

  int num_free = 0;
  int num_nonneg = 0;
  std::vector<int> psd_dims;
  std::vector<double> c;  // length total_vars()
  std::vector<Row> rows;
  int normalization_row = -1;
  std::vector<std::string> var_labels;  // optional, aligned with variables when set

  int cone_offset() const { return num_free; }
  static int svec_len(int d) { return d * (d + 1) / 2; }

  int total_vars() const {
    int t = num_free + num_nonneg;
    for (int d : psd_dims) t += svec_len(d);
    return t;
  }
  int num_cone_vars() const { return total_vars() - num_free; }

  int psd_offset(int block) const {
    int off = num_free + num_nonneg;
    for (int b = 0; b < block; ++b) off += svec_len(psd_dims[b]);
    return off;
  }

  // index of entry (i,j), i <= j, within block `block` (column-major upper packing:
  // (0,0), (0,1), (1,1), (0,2), (1,2), (2,2), ...)
  int svec_index(int block, int i, int j) const {
    if (i > j) std::swap(i, j);
    return psd_offset(block) + j * (j + 1) / 2 + i;
  }
  // scale factor between matrix entry and svec coordinate
  static double svec_scale(int i, int j) { return i == j ? 1.0 : std::sqrt(2.0); }

  int add_row(Row r) {
    rows.push_back(std::move(r));
    return (int)rows.size() - 1;
  }

  void validate() const {
    const int tv = total_vars();
    if ((int)c.size() != tv) throw ConfigError("conic: objective length mismatch");
    for (int d : psd_dims) {
      if (d < 1) throw ConfigError("conic: PSD block dimension < 1");
    }
    for (const Row& r : rows) {
      int prev = -1;
      for (const auto& [idx, val] : r.coeffs) {
        if (idx < 0 || idx >= tv) throw ConfigError("conic: coefficient index out of range in row '" + r.label + "'");
        if (idx <= prev) throw ConfigError("conic: row coefficients must be strictly increasing");
        prev = idx;
        (void)val;
      }
    }
    if (normalization_row >= (int)rows.size()) throw ConfigError("conic: bad normalization row");
  }
};

}  // namespace orx
