#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qdg/matrix.hpp"

namespace qdg {

using VecD = std::vector<double>;

Eigen::MatrixXd to_eigen(const MatD& m);
MatD from_eigen(const Eigen::MatrixXd& m);

Eigen::VectorXd singular_values(const MatD& m);

// Number of singular values above rel_tol * sigma_max.
std::size_t numeric_rank(const MatD& m, double rel_tol = 1e-8);

// Right singular vectors with singular value <= rel_tol * sigma_max.
std::vector<VecD> numeric_nullspace(const MatD& m, double rel_tol = 1e-8);

// Minimum-norm least-squares solution of m x = b.
VecD min_norm_solve(const MatD& m, const VecD& b);

double norm2(const VecD& v);

}  // namespace qdg
