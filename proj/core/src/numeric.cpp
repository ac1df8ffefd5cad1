#include "qdg/numeric.hpp"

#include <cmath>

namespace qdg {

Eigen::MatrixXd to_eigen(const MatD& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

MatD from_eigen(const Eigen::MatrixXd& e) {
  MatD m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

Eigen::VectorXd singular_values(const MatD& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues();
}

std::size_t numeric_rank(const MatD& m, double rel_tol) {
  Eigen::VectorXd s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

std::vector<VecD> numeric_nullspace(const MatD& m, double rel_tol) {
  std::vector<VecD> out;
  std::size_t n = m.cols();
  if (n == 0) return out;
  if (m.rows() == 0) {
    for (std::size_t j = 0; j < n; ++j) {
      VecD v(n, 0.0);
      v[j] = 1.0;
      out.push_back(v);
    }
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(to_eigen(m), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() ? s(0) : 0.0;
  const auto& v = svd.matrixV();
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
    double sj = j < s.size() ? s(j) : 0.0;
    if (sj > rel_tol * smax && smax > 0) continue;
    VecD col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, j);
    out.push_back(std::move(col));
  }
  return out;
}

VecD min_norm_solve(const MatD& m, const VecD& b) {
  Eigen::VectorXd rhs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i) = b[i];
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(to_eigen(m));
  Eigen::VectorXd x = cod.solve(rhs);
  return VecD(x.data(), x.data() + x.size());
}

double norm2(const VecD& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace qdg
