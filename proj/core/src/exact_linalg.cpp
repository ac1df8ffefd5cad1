#include "qdg/exact_linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <complex>

#include "qdg/errors.hpp"

namespace qdg {

std::vector<std::size_t> rref_inplace(MatQ& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(MatQ m) { return rref_inplace(m).size(); }

std::vector<VecQ> nullspace(const MatQ& m) {
  MatQ r = m;
  auto pivots = rref_inplace(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    VecQ v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<VecQ> solve(const MatQ& m, const VecQ& b) {
  if (b.size() != m.rows()) throw InputError("solve: right-hand side size mismatch");
  MatQ aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, m.cols()) = b[i];
  auto pivots = rref_inplace(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  VecQ x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
  return x;
}

std::optional<MatQ> inverse(const MatQ& m) {
  if (!m.square()) throw InputError("inverse of non-square matrix");
  std::size_t n = m.rows();
  MatQ aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, MatQ::identity(n));
  auto pivots = rref_inplace(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

MatQ from_columns(const std::vector<VecQ>& cols, std::size_t rows) {
  MatQ m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

MatQ from_rows(const std::vector<VecQ>& rows, std::size_t cols) {
  MatQ m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

VecQ mat_vec(const MatQ& m, const VecQ& v) {
  VecQ out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!is_zero(v[j])) out[i] += m(i, j) * v[j];
  return out;
}

VecQ RowSpace::reduce(VecQ v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    std::size_t p = pivots_[k];
    if (is_zero(v[p])) continue;
    Rational f = v[p];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!is_zero(rows_[k][j])) v[j] -= f * rows_[k][j];
  }
  return v;
}

bool RowSpace::insert(const VecQ& v) {
  if (v.size() != ambient_) throw InputError("RowSpace: vector size mismatch");
  VecQ r = reduce(v);
  std::size_t p = 0;
  while (p < ambient_ && is_zero(r[p])) ++p;
  if (p == ambient_) return false;
  Rational inv = 1 / r[p];
  for (auto& x : r) x *= inv;
  // Keep the basis fully reduced so that reduce() stays a single pass.
  for (auto& row : rows_) {
    if (is_zero(row[p])) continue;
    Rational f = row[p];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!is_zero(r[j])) row[j] -= f * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::contains(const VecQ& v) const {
  if (v.size() != ambient_) throw InputError("RowSpace: vector size mismatch");
  VecQ r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Rational& q) { return is_zero(q); });
}

// ---- univariate polynomials ----

namespace {
void trim(VecQ& c) {
  while (!c.empty() && is_zero(c.back())) c.pop_back();
}
}  // namespace

UPoly::UPoly(VecQ coeffs) : c(std::move(coeffs)) { trim(c); }

Rational UPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  VecQ c(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  VecQ c(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  VecQ c(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InputError("polynomial division by zero");
  VecQ r = a.c;
  if (a.degree() < b.degree()) return {UPoly(), a};
  VecQ q(a.c.size() - b.c.size() + 1, Rational(0));
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = r[k + b.degree()] / b.leading();
    q[k] = f;
    if (is_zero(f)) continue;
    for (int j = 0; j <= b.degree(); ++j) r[k + j] -= f * b.c[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly derivative(const UPoly& p) {
  if (p.c.size() <= 1) return UPoly();
  VecQ c(p.c.size() - 1);
  for (std::size_t i = 1; i < p.c.size(); ++i) c[i - 1] = p.c[i] * static_cast<long>(i);
  return UPoly(std::move(c));
}

UPoly monic_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational l = a.leading();
  for (auto& x : a.c) x /= l;
  return a;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = monic_gcd(p, derivative(p));
  UPoly s = divmod(p, g).first;
  Rational l = s.leading();
  for (auto& x : s.c) x /= l;
  return s;
}

UPoly charpoly(const MatQ& m) {
  if (!m.square()) throw InputError("charpoly of non-square matrix");
  std::size_t n = m.rows();
  // c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k.
  VecQ c(n + 1, Rational(0));
  c[n] = 1;
  MatQ mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    c[n - k] = -(m * mk).trace() / static_cast<long>(k);
  }
  return UPoly(std::move(c));
}

std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw InputError("roots of the zero polynomial");
  std::vector<std::pair<Rational, int>> out;
  UPoly s = squarefree_part(p);
  int d = s.degree();
  if (d <= 0) return out;
  // Numeric roots from the companion matrix, then exact confirmation.
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -Rational(s.c[i] / s.leading()).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<Rational> found;
  for (int i = 0; i < d; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-6 * (1 + std::abs(z))) continue;
    for (std::int64_t den : {1000LL, 1000000LL}) {
      Rational r = rationalize(z.real(), den);
      if (is_zero(s(r)) && std::find(found.begin(), found.end(), r) == found.end()) {
        found.push_back(r);
        break;
      }
    }
  }
  if (static_cast<int>(found.size()) != d)
    throw UnsupportedInput("polynomial has roots that are not small-denominator rationals");
  std::sort(found.begin(), found.end());
  for (const auto& r : found) {
    UPoly rest = p;
    int mult = 0;
    UPoly lin(VecQ{-r, Rational(1)});
    while (true) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      ++mult;
    }
    out.emplace_back(r, mult);
  }
  return out;
}

std::vector<std::pair<Rational, int>> rational_eigenvalues(const MatQ& m) {
  return rational_roots(charpoly(m));
}

std::vector<VecQ> generalized_eigenspace(const MatQ& m, const Rational& a, int multiplicity) {
  std::size_t n = m.rows();
  MatQ shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= a;
  MatQ power = MatQ::identity(n);
  for (int k = 0; k < multiplicity; ++k) power = power * shifted;
  return nullspace(power);
}

MatQ random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int bound) {
  MatQ m(rows, cols);
  for (auto& v : m.data()) v = random_rational(rng, bound);
  return m;
}

MatQ random_invertible(std::size_t n, std::mt19937_64& rng, int bound) {
  while (true) {
    MatQ g = random_matrix(n, n, rng, bound);
    if (rank(g) == n) return g;
  }
}

}  // namespace qdg
