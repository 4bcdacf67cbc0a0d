#pragma once

#include <map>
#include <string>
#include <vector>

#include "orx/conic.hpp"
#include "orx/indexsets.hpp"
#include "orx/moment.hpp"
#include "orx/pop.hpp"
#include "orx/sparsity.hpp"

namespace orx {

enum class Method { put, pol, han, sppol, sphan, spput };

std::string method_name(Method m);

// One weighted-SOS Gram block of the certificate and where it lives in the
// conic program.
struct GramRef {
  int constraint = 0;        // i in [m], 1-based; constraint == m is the implicit g_m = 1 family
  int power = 0;             // Handelman power j of the generator
  int block_j = 0;           // block index within the cover / parity split
  int clique = -1;           // c (0-based), -1 for dense families
  std::vector<Exp> basis;    // monomial indices beta_a of the block
  bool scalar = false;       // emitted as a nonnegative scalar (1x1 block)
  int nonneg_index = -1;     // position within the nonneg segment when scalar
  int psd_block = -1;        // position within psd_dims when !scalar
  std::vector<int> tie_rows; // row ids, one per entry (a,b), a <= b, column-major upper order
};

struct VariableMap {
  Method method = Method::pol;
  int n = 0;
  int k = 0, s = 1, d = 0;
  int unit = 0;  // constraint index of the implicit g = 1 family (= m_total)
  double epsilon = 0.0;
  bool even_only = true;  // moment indices are half-indices of even moments

  // moment variables: program free var -> (clique tag, index); clique -1 = global y
  std::vector<std::pair<int, Exp>> moments;
  std::vector<GramRef> grams;
  std::vector<int> k_i;  // effective order per i in [m]; -1 when the family was omitted
  std::vector<std::string> warnings;
  CliqueStructure cliques;  // empty for dense methods

  int moment_index(int clique, const Exp& alpha) const {
    auto it = index_.find({clique, alpha});
    if (it == index_.end()) throw CoverageError("moment " + exp_to_string(alpha) + " not in variable map");
    return it->second;
  }
  bool has_moment(int clique, const Exp& alpha) const { return index_.count({clique, alpha}) > 0; }

  // registration (used by builders)
  int add_moment(int clique, const Exp& alpha) {
    int id = (int)moments.size();
    moments.push_back({clique, alpha});
    index_[{clique, alpha}] = id;
    return id;
  }

 private:
  struct KeyLess {
    bool operator()(const std::pair<int, Exp>& a, const std::pair<int, Exp>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return GradLess{}(a.second, b.second);
    }
  };
  std::map<std::pair<int, Exp>, int, KeyLess> index_;
};

struct Relaxation {
  ConicProgram prog;
  VariableMap map;
};

Relaxation build_polya_dense(const PopInstance& pop, int k, int s, double epsilon = 0.0);
Relaxation build_handelman_dense(const PopInstance& pop, int k, int s);
Relaxation build_putinar_dense(const PopInstance& pop, int k, bool symmetry = false);
// internal: squared-problem Putinar with/without the parity split (symmetry=true
// delegates here with split=true)
Relaxation build_putinar_squared(const PopInstance& pop, int k, bool split);

Relaxation build_polya_sparse(const PopInstance& pop, int k, int d, int s);
Relaxation build_handelman_sparse(const PopInstance& pop, int k, int s);
Relaxation build_putinar_sparse(const PopInstance& pop, int k);

}  // namespace orx
