#include "orx/moment.hpp"

namespace orx {

double riesz(const Poly& p, const MomentVector& y) {
  if (p.dim() != y.n) throw DimensionError("riesz: dimension mismatch");
  double v = 0.0;
  for (const auto& [a, c] : p.terms()) v += c * y.at(a);
  return v;
}

Eigen::MatrixXd moment_submatrix(const std::vector<Exp>& B, const Poly& h, const MomentVector& y) {
  const int r = (int)B.size();
  Eigen::MatrixXd M(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {  // assemble once per unordered pair -> exact symmetry
      Exp bij = exp_add(B[i], B[j]);
      double v = 0.0;
      for (const auto& [g, c] : h.terms()) v += c * y.at(exp_add(g, bij));
      M(i, j) = M(j, i) = v;
    }
  }
  return M;
}

Eigen::VectorXd localizing_diag(int t, const Poly& h, const MomentVector& y, const std::optional<std::vector<int>>& I) {
  std::vector<Exp> B = I ? monomials_up_to_clique(y.n, *I, t) : monomials_up_to(y.n, t);
  Eigen::VectorXd d((int)B.size());
  for (size_t i = 0; i < B.size(); ++i) {
    Exp bb = exp_add(B[i], B[i]);
    double v = 0.0;
    for (const auto& [g, c] : h.terms()) v += c * y.at(exp_add(g, bb));
    d((int)i) = v;
  }
  return d;
}

}  // namespace orx
