#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "qdg/matrix.hpp"
#include "qdg/rational.hpp"

namespace qdg {

using VecQ = std::vector<Rational>;

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref_inplace(MatQ& m);

std::size_t rank(MatQ m);

// Basis of {v : m v = 0}, one vector per free column.
std::vector<VecQ> nullspace(const MatQ& m);

// Some solution of m v = b, or nullopt when the system is inconsistent.
std::optional<VecQ> solve(const MatQ& m, const VecQ& b);

std::optional<MatQ> inverse(const MatQ& m);

MatQ from_columns(const std::vector<VecQ>& cols, std::size_t rows);
MatQ from_rows(const std::vector<VecQ>& rows, std::size_t cols);

// Incrementally maintained row space kept in reduced echelon form.
class RowSpace {
 public:
  explicit RowSpace(std::size_t ambient) : ambient_(ambient) {}

  // Adds v; returns true when v was independent of the current span.
  bool insert(const VecQ& v);
  bool contains(const VecQ& v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<VecQ>& basis() const { return rows_; }

 private:
  VecQ reduce(VecQ v) const;

  std::size_t ambient_;
  std::vector<VecQ> rows_;
  std::vector<std::size_t> pivots_;
};

// Univariate polynomial with coefficients in increasing degree; no trailing zeros.
struct UPoly {
  VecQ c;

  UPoly() = default;
  explicit UPoly(VecQ coeffs);
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Rational operator()(const Rational& t) const;
  Rational leading() const { return c.empty() ? Rational(0) : c.back(); }
};

UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
// Polynomial long division; returns {quotient, remainder}.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly derivative(const UPoly& p);
UPoly monic_gcd(UPoly a, UPoly b);
UPoly squarefree_part(const UPoly& p);

// det(t I - m) via Faddeev-LeVerrier.
UPoly charpoly(const MatQ& m);

template <class T>
Matrix<T> evaluate_poly(const UPoly& p, const Matrix<T>& m) {
  Matrix<T> acc(m.rows(), m.cols());
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += scalar_from_rational<T>(p.c[k]);
  }
  return acc;
}

// Rational roots of p with multiplicity. Throws UnsupportedInput if some root is
// not rational (the located roots then do not account for the full degree).
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p);

// Eigenvalues of m with algebraic multiplicities; all must be rational.
std::vector<std::pair<Rational, int>> rational_eigenvalues(const MatQ& m);

// ker (m - a)^k for k = algebraic multiplicity.
std::vector<VecQ> generalized_eigenspace(const MatQ& m, const Rational& a, int multiplicity);

VecQ mat_vec(const MatQ& m, const VecQ& v);

// Integer entries in [-bound, bound].
MatQ random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int bound = 3);
// Random integer matrix, redrawn until invertible.
MatQ random_invertible(std::size_t n, std::mt19937_64& rng, int bound = 2);

}  // namespace qdg
