#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdg/errors.hpp"
#include "qdg/rational.hpp"

namespace qdg {

// Dense row-major matrix over an exact (Rational) or floating (double) field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix m(rows, cols);
    m(i, j) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw InputError("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    if (!square()) throw InputError("trace of non-square matrix " + shape());
    T s(0);
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return is_zero(v); });
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InputError(std::string("matrix shape mismatch in ") + op + ": " + shape() + " vs " +
                       o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatQ = Matrix<Rational>;
using MatD = Matrix<double>;

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
Matrix<T> block_diagonal(const std::vector<Matrix<T>>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix<T> m(r, c);
  std::size_t i = 0, j = 0;
  for (const auto& b : blocks) {
    m.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return m;
}

inline MatD to_double(const MatQ& m) {
  MatD d(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.size(); ++k) d.data()[k] = m.data()[k].get_d();
  return d;
}
inline const MatD& to_double(const MatD& m) { return m; }

template <class T>
Matrix<T> matrix_cast(const MatQ& m) {
  Matrix<T> out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.size(); ++k) out.data()[k] = scalar_from_rational<T>(m.data()[k]);
  return out;
}

template <class T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0;
  for (const auto& v : m.data()) {
    double d = to_double(v);
    s += d * d;
  }
  return std::sqrt(s);
}

template <class T>
double max_abs(const Matrix<T>& m) {
  double r = 0;
  for (const auto& v : m.data()) r = std::max(r, std::fabs(to_double(v)));
  return r;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      if constexpr (std::is_same_v<T, Rational>)
        os << m(i, j).get_str();
      else
        os << m(i, j);
    }
  }
  os << "]";
  return os.str();
}

// Row-major flattening; the inverse of unflatten.
template <class T>
std::vector<T> flatten(const Matrix<T>& m) {
  return m.data();
}

template <class T>
Matrix<T> unflatten(const std::vector<T>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw InputError("unflatten: size mismatch");
  Matrix<T> m(rows, cols);
  m.data() = v;
  return m;
}

}  // namespace qdg
