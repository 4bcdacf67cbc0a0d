#include "orx/sdpa.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace orx {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

std::string export_sdpa(const ConicProgram& prog) {
  prog.validate();
  const int nf = prog.num_free, ns = prog.num_nonneg;
  const int lp = 2 * nf + ns;
  const int nblk = (lp > 0 ? 1 : 0) + (int)prog.psd_dims.size();
  const int psd_blk0 = lp > 0 ? 2 : 1;

  std::ostringstream os;
  os << "\"orx free=" << nf << " nonneg=" << ns << "\n";
  os << prog.rows.size() << " = mDIM\n";
  os << nblk << " = nBLOCK\n";
  {
    bool first = true;
    for (int t = 0; t < nblk; ++t) {
      if (!first) os << " ";
      first = false;
      if (lp > 0 && t == 0) os << -lp;
      else os << prog.psd_dims[t - (lp > 0 ? 1 : 0)];
    }
    os << "\n";
  }
  for (size_t r = 0; r < prog.rows.size(); ++r) os << (r ? " " : "") << fmt(prog.rows[r].rhs);
  os << "\n";

  // variable index -> (block, i, j, factor) where svec value * factor = matrix entry
  auto emit = [&](int matno, int var, double coef) {
    int blk, i, j;
    double val;
    if (var < nf) {  // free: p at var, q at nf+var
      os << matno << " 1 " << var + 1 << " " << var + 1 << " " << fmt(coef) << "\n";
      os << matno << " 1 " << nf + var + 1 << " " << nf + var + 1 << " " << fmt(-coef) << "\n";
      return;
    }
    if (var < nf + ns) {
      blk = 1;
      i = j = 2 * nf + (var - nf) + 1;
      val = coef;
    } else {
      int rest = var - nf - ns;
      int b = 0;
      while (rest >= ConicProgram::svec_len(prog.psd_dims[b])) rest -= ConicProgram::svec_len(prog.psd_dims[b++]);
      // column-major upper packing
      int col = 0;
      while (rest >= col + 1) rest -= ++col;
      int row = rest;
      blk = psd_blk0 + b;
      i = row + 1;
      j = col + 1;
      val = row == col ? coef : coef / kSqrt2;
    }
    os << matno << " " << blk << " " << i << " " << j << " " << fmt(val) << "\n";
  };

  for (int v = 0; v < prog.total_vars(); ++v) {
    if (prog.c[v] != 0.0) emit(0, v, -prog.c[v]);  // F0 = -c (max form)
  }
  for (size_t r = 0; r < prog.rows.size(); ++r) {
    for (const auto& [v, a] : prog.rows[r].coeffs) emit((int)r + 1, v, a);
  }
  return os.str();
}

ConicProgram import_sdpa(const std::string& text) {
  // tokenize, remembering line numbers; comment lines start with '"' or '*'
  std::vector<std::pair<std::string, int>> tok;
  int free_hint = -1, nonneg_hint = -1;
  {
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
      ++ln;
      if (!line.empty() && (line[0] == '"' || line[0] == '*')) {
        int f, n;
        if (std::sscanf(line.c_str(), "\"orx free=%d nonneg=%d", &f, &n) == 2) {
          free_hint = f;
          nonneg_hint = n;
        }
        continue;
      }
      for (char& ch : line) {
        if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}' || ch == '=') ch = ' ';
      }
      std::istringstream ls(line);
      std::string w;
      while (ls >> w) {
        // SDPA writers sometimes append words like mDIM on header lines
        if ((w[0] >= '0' && w[0] <= '9') || w[0] == '-' || w[0] == '+' || w[0] == '.') tok.push_back({w, ln});
      }
    }
  }
  size_t pos = 0;
  auto next_int = [&](const char* what) {
    if (pos >= tok.size()) throw ParseError(std::string("unexpected end of file reading ") + what, tok.empty() ? 1 : tok.back().second);
    try {
      size_t used;
      int v = std::stoi(tok[pos].first, &used);
      if (used != tok[pos].first.size()) throw std::invalid_argument("");
      ++pos;
      return v;
    } catch (...) {
      throw ParseError(std::string("bad integer '") + tok[pos].first + "' reading " + what, tok[pos].second);
    }
  };
  auto next_double = [&](const char* what) {
    if (pos >= tok.size()) throw ParseError(std::string("unexpected end of file reading ") + what, tok.empty() ? 1 : tok.back().second);
    try {
      size_t used;
      double v = std::stod(tok[pos].first, &used);
      if (used != tok[pos].first.size()) throw std::invalid_argument("");
      ++pos;
      return v;
    } catch (...) {
      throw ParseError(std::string("bad number '") + tok[pos].first + "' reading " + what, tok[pos].second);
    }
  };

  const int m = next_int("mDIM");
  const int nblk = next_int("nBLOCK");
  if (m < 0 || nblk < 0) throw ParseError("negative dimension in header");
  std::vector<int> bsizes(nblk);
  for (int b = 0; b < nblk; ++b) bsizes[b] = next_int("block sizes");

  int lp_size = 0;
  std::vector<int> psd_dims;
  std::vector<int> blk_kind(nblk);  // 0 = lp, 1 = psd
  std::vector<int> blk_base(nblk);  // base offset of block within its segment
  for (int b = 0; b < nblk; ++b) {
    if (bsizes[b] < 0 || bsizes[b] == 1) {
      // negative = diagonal block; size-1 "PSD" blocks are scalars too
      blk_kind[b] = 0;
      blk_base[b] = lp_size;
      lp_size += std::abs(bsizes[b]);
    } else {
      blk_kind[b] = 1;
      blk_base[b] = (int)psd_dims.size();
      psd_dims.push_back(bsizes[b]);
    }
  }

  int nf = 0;
  if (free_hint >= 0) {
    if (nonneg_hint < 0 || lp_size != 2 * free_hint + nonneg_hint) throw ParseError("free-split comment does not match LP block size");
    nf = free_hint;
  }
  const int ns = lp_size - 2 * nf;

  ConicProgram prog;
  prog.num_free = nf;
  prog.num_nonneg = ns;
  prog.psd_dims = psd_dims;
  prog.c.assign(prog.total_vars(), 0.0);
  prog.rows.assign(m, {});
  for (int r = 0; r < m; ++r) prog.rows[r].rhs = next_double("rhs");

  int psd_seg = 0;
  std::vector<int> psd_off(psd_dims.size());
  for (size_t b = 0; b < psd_dims.size(); ++b) {
    psd_off[b] = psd_seg;
    psd_seg += ConicProgram::svec_len(psd_dims[b]);
  }

  // entries accumulate into dense-ish coefficient maps per matrix
  std::vector<std::vector<std::pair<int, double>>> coef(m + 1);
  while (pos < tok.size()) {
    int line = tok[pos].second;
    int matno = next_int("matno");
    int blk = next_int("blkno");
    int ei = next_int("entry row");
    int ej = next_int("entry col");
    double val = next_double("entry value");
    if (matno < 0 || matno > m) throw ParseError("matno out of range", line);
    if (blk < 1 || blk > nblk) throw ParseError("blkno out of range", line);
    if (ei > ej) std::swap(ei, ej);
    int var;
    double svval;
    if (blk_kind[blk - 1] == 0) {
      if (ei != ej) throw ParseError("off-diagonal entry in diagonal block", line);
      int idx = blk_base[blk - 1] + ei - 1;
      if (ei < 1 || idx >= lp_size) throw ParseError("diagonal entry out of range", line);
      if (idx < 2 * nf) {
        // p/q pair re-merged through the p coordinate; q entries are implied
        if (idx >= nf) continue;
        var = idx;
      } else {
        var = nf + (idx - 2 * nf);
      }
      svval = val;
    } else {
      int d = psd_dims[blk_base[blk - 1]];
      if (ei < 1 || ej > d) throw ParseError("matrix entry out of range", line);
      int q = (ej - 1) * ej / 2 + (ei - 1);
      var = nf + ns + psd_off[blk_base[blk - 1]] + q;
      svval = ei == ej ? val : val * kSqrt2;
    }
    coef[matno].push_back({var, svval});
  }
  auto squash = [](std::vector<std::pair<int, double>>& v) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> out;
    for (auto& [i, x] : v) {
      if (!out.empty() && out.back().first == i) out.back().second += x;
      else out.push_back({i, x});
    }
    v = std::move(out);
  };
  squash(coef[0]);
  for (auto& [v, a] : coef[0]) prog.c[v] = -a;  // c = -F0
  for (int r = 1; r <= m; ++r) {
    squash(coef[r]);
    prog.rows[r - 1].coeffs = coef[r];
    prog.rows[r - 1].label = "sdpa row " + std::to_string(r);
  }
  prog.validate();
  return prog;
}

bool structurally_equal(const ConicProgram& a, const ConicProgram& b) {
  if (a.num_free != b.num_free || a.num_nonneg != b.num_nonneg || a.psd_dims != b.psd_dims) return false;
  if (a.c != b.c) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].rhs != b.rows[r].rhs || a.rows[r].coeffs != b.rows[r].coeffs) return false;
  }
  return true;
}

}  // namespace orx
