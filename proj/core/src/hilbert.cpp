#include "qdg/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <map>

#include "qdg/errors.hpp"
#include "qdg/exact_linalg.hpp"
#include "qdg/numeric.hpp"

namespace qdg {

ADHMD to_double(const ADHMQ& d) {
  return ADHMD{to_double(d.x), to_double(d.xs), to_double(d.v), to_double(d.vs)};
}

ADHMQ conjugate(const ADHMQ& d, const MatQ& g) {
  validate_adhm(d);
  auto gi = inverse(g);
  if (!gi) throw InputError("conjugate: matrix is not invertible");
  return ADHMQ{g * d.x * *gi, g * d.xs * *gi, g * d.v, d.vs * *gi};
}

namespace {

VecQ column(const MatQ& v) {
  VecQ c(v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i) c[i] = v(i, 0);
  return c;
}

void require_shapes(const std::size_t n, const MatQ& xs, const MatQ& v) {
  if (xs.rows() != n || xs.cols() != n || v.rows() != n || v.cols() != 1)
    throw InputError("expected n x n matrices and an n-vector");
}

}  // namespace

bool stability_check(const MatQ& x, const MatQ& xs, const MatQ& v) {
  std::size_t n = x.rows();
  require_shapes(n, xs, v);
  if (!x.square()) throw InputError("x must be square");
  RowSpace span(n);
  std::vector<VecQ> frontier;
  VecQ v0 = column(v);
  if (span.insert(v0)) frontier.push_back(v0);
  while (!frontier.empty() && span.dim() < n) {
    std::vector<VecQ> next;
    for (const auto& w : frontier)
      for (const MatQ* a : {&x, &xs}) {
        VecQ aw = mat_vec(*a, w);
        if (span.insert(aw)) next.push_back(aw);
      }
    frontier = std::move(next);
  }
  return span.dim() == n;
}

bool stability_check(const MatD& x, const MatD& xs, const MatD& v, double rel_tol) {
  std::size_t n = x.rows();
  if (n == 0) return true;
  std::vector<MatD> level{v}, all{v};
  for (std::size_t len = 1; len + 2 <= 2 * n; ++len) {
    std::vector<MatD> next;
    for (const auto& w : level) {
      next.push_back(x * w);
      next.push_back(xs * w);
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  MatD k(n, all.size());
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) k(i, j) = all[j](i, 0);
  if (max_abs(k) == 0) return false;
  return numeric_rank(k, rel_tol) == n;
}

namespace {

double datum_norm(const ADHMD& d) {
  return std::sqrt(std::pow(frobenius_norm(d.x), 2) + std::pow(frobenius_norm(d.xs), 2) +
                   std::pow(frobenius_norm(d.v), 2) + std::pow(frobenius_norm(d.vs), 2));
}

}  // namespace

bool stable_zero_fiber_check(const ADHMD& d, double tol) {
  validate_adhm(d);
  if (frobenius_norm(framed_moment(d)) > tol) throw PreconditionError("point is not on the zero fiber");
  if (!stability_check(d.x, d.xs, d.v)) throw PreconditionError("point is not stable");
  return frobenius_norm(d.vs) <= tol * (1 + datum_norm(d));
}

ADHMD project_to_zero_fiber(const ADHMD& d) {
  validate_adhm(d);
  std::size_t n = d.n(), nn = n * n;
  // unknowns: dx (nn), dxs (nn), dv (n), dvs (n); rows: entries of the moment
  MatD jac(nn, 2 * nn + 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t r = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        // [dx, xs]_{ij} = dx_ik xs_kj - xs_ik dx_kj
        jac(r, i * n + k) += d.xs(k, j);
        jac(r, k * n + j) -= d.xs(i, k);
        // [x, dxs]_{ij} = x_ik dxs_kj - dxs_ik x_kj
        jac(r, nn + k * n + j) += d.x(i, k);
        jac(r, nn + i * n + k) -= d.x(k, j);
      }
      jac(r, 2 * nn + i) += d.vs(0, j);
      jac(r, 2 * nn + n + j) += d.v(i, 0);
    }
  MatD mu = framed_moment(d);
  VecD rhs(nn);
  for (std::size_t k = 0; k < nn; ++k) rhs[k] = -mu.data()[k];
  VecD step = min_norm_solve(jac, rhs);
  ADHMD out = d;
  for (std::size_t k = 0; k < nn; ++k) {
    out.x.data()[k] += step[k];
    out.xs.data()[k] += step[nn + k];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.v(i, 0) += step[2 * nn + i];
    out.vs(0, i) += step[2 * nn + n + i];
  }
  return out;
}

namespace {

void require_commuting(const MatQ& x, const MatQ& xs) {
  if (!x.square() || xs.rows() != x.rows() || xs.cols() != x.cols())
    throw InputError("hilbert_chow: x and x* must be square of the same size");
  if (!commutator(x, xs).is_zero_matrix()) throw PreconditionError("hilbert_chow: x and x* do not commute");
}

// Matrix of xs on span(basis), assuming the span is xs-stable.
MatQ restrict_to(const MatQ& xs, const std::vector<VecQ>& basis) {
  std::size_t n = xs.rows(), m = basis.size();
  MatQ b = from_columns(basis, n);
  MatQ r(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    auto c = solve(b, mat_vec(xs, basis[j]));
    if (!c) throw PreconditionError("subspace is not stable under x*");
    for (std::size_t i = 0; i < m; ++i) r(i, j) = (*c)[i];
  }
  return r;
}

}  // namespace

PlanePoints hilbert_chow(const MatQ& x, const MatQ& xs) {
  require_commuting(x, xs);
  PlanePoints pts;
  for (const auto& [a, mult] : rational_eigenvalues(x)) {
    MatQ r = restrict_to(xs, generalized_eigenspace(x, a, mult));
    for (const auto& [b, m2] : rational_eigenvalues(r))
      for (int k = 0; k < m2; ++k) pts.emplace_back(a, b);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<PlanePointD> hilbert_chow(const MatD& x, const MatD& xs, std::uint64_t seed, double tol,
                                      double cluster_tol) {
  if (!x.square() || xs.rows() != x.rows() || xs.cols() != x.cols())
    throw InputError("hilbert_chow: x and x* must be square of the same size");
  double scale = std::max({1.0, frobenius_norm(x), frobenius_norm(xs)});
  if (frobenius_norm(commutator(x, xs)) > tol * scale * scale)
    throw PreconditionError("hilbert_chow: x and x* do not commute");
  std::size_t n = x.rows();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  double a = u(rng), b = u(rng);
  MatD c = x * a + xs * b;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(c).cast<std::complex<double>>());
  std::vector<std::complex<double>> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // single-linkage clustering with gap cluster_tol * scale
  std::vector<int> label(n, -1);
  int clusters = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = clusters;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < 0 && std::abs(ev[j] - ev[k]) <= cluster_tol * scale) {
          label[j] = clusters;
          stack.push_back(j);
        }
    }
    ++clusters;
  }
  std::vector<PlanePointD> pts;
  for (int cl = 0; cl < clusters; ++cl) {
    std::complex<double> mean = 0;
    int m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (label[i] == cl) {
        mean += ev[i];
        ++m;
      }
    mean /= static_cast<double>(m);
    if (std::abs(mean.imag()) > cluster_tol * scale)
      throw UnsupportedInput("hilbert_chow: non-real joint spectrum");
    MatD shifted = c;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mean.real();
    MatD power = MatD::identity(n);
    for (int k = 0; k < m; ++k) power = power * shifted;
    // the cluster size fixes the dimension: take the m smallest right singular vectors
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(power), Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double top = std::max(sv(0), 1.0);
    if (sv(static_cast<Eigen::Index>(n - m)) > 1e-6 * top ||
        (m < static_cast<int>(n) && sv(static_cast<Eigen::Index>(n - m - 1)) <= 1e-6 * top))
      throw UnsupportedInput("hilbert_chow: generalized eigenspace dimension mismatch");
    MatD basis(n, static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        basis(i, static_cast<std::size_t>(j)) = svd.matrixV()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - m + j));
    // orthonormal basis, so the restriction is basis^T A basis
    double tx = (basis.transpose() * x * basis).trace() / m;
    double ts = (basis.transpose() * xs * basis).trace() / m;
    for (int k = 0; k < m; ++k) pts.emplace_back(tx, ts);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

std::vector<std::pair<Rational, Rational>> ges_traces(const MatQ& x, const MatQ& xs) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [a, mult] : rational_eigenvalues(x))
    out.emplace_back(a, restrict_to(xs, generalized_eigenspace(x, a, mult)).trace());
  return out;
}

bool lambda_n1_membership(const MatQ& x, const MatQ& xs, const MatQ& v) {
  require_shapes(x.rows(), xs, v);
  return lambda_membership(x, xs) && stability_check(x, xs, v);
}

bool saturation_membership(const MatQ& x, const MatQ& xs, const MatQ& v) {
  require_shapes(x.rows(), xs, v);
  if (!commutator(x, xs).is_zero_matrix()) return false;
  if (!stability_check(x, xs, v)) return false;
  for (const auto& [a, t] : ges_traces(x, xs))
    if (!qdg::is_zero(t)) return false;
  return true;
}

namespace {

template <class S, class Eq>
std::optional<Partition> group_shape(const std::vector<std::pair<S, S>>& pts, Eq same, bool& sums_zero,
                                     double tol) {
  std::vector<std::pair<S, std::vector<S>>> groups;
  for (const auto& [a, b] : pts) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return same(g.first, a); });
    if (it == groups.end())
      groups.push_back({a, {b}});
    else
      it->second.push_back(b);
  }
  sums_zero = true;
  Partition shape;
  for (const auto& [a, bs] : groups) {
    S sum = 0;
    for (const auto& b : bs) sum += b;
    if constexpr (std::is_same_v<S, Rational>)
      sums_zero = sums_zero && qdg::is_zero(sum);
    else
      sums_zero = sums_zero && std::fabs(sum) <= tol;
    shape.push_back(static_cast<int>(bs.size()));
  }
  std::sort(shape.rbegin(), shape.rend());
  return shape;
}

}  // namespace

bool stratum_test(const PlanePoints& pts, const Partition& lambda) {
  bool zero = false;
  auto shape = group_shape(pts, [](const Rational& a, const Rational& b) { return a == b; }, zero, 0);
  return zero && *shape == lambda;
}

bool stratum_test(const std::vector<PlanePointD>& pts, const Partition& lambda, double tol) {
  bool zero = false;
  auto shape = group_shape(pts, [tol](double a, double b) { return std::fabs(a - b) <= tol; }, zero, tol);
  return zero && *shape == lambda;
}

std::optional<Partition> stratum_of(const PlanePoints& pts) {
  bool zero = false;
  auto shape = group_shape(pts, [](const Rational& a, const Rational& b) { return a == b; }, zero, 0);
  if (!zero) return std::nullopt;
  return shape;
}

ComponentSample sample_component(const NestedPartition& mu, std::uint64_t seed, bool conjugate_point) {
  validate_nested(mu);
  if (mu.empty()) throw InputError("sample_component needs a nonempty nested partition");
  std::mt19937_64 rng(seed);
  ComponentSample s;
  s.mu = mu;
  s.stratum = nested_shape(mu);
  std::size_t n = static_cast<std::size_t>(partition_size(s.stratum));
  MatQ x(n, n), xs(n, n), v(n, 1);
  Rational a = random_rational(rng, 3);
  std::vector<std::size_t> offsets;
  std::vector<MatQ> nilpotents;
  std::size_t off = 0;
  for (const auto& part : mu) {
    s.alphas.push_back(a);
    a += Rational(1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2));
    std::size_t m = static_cast<std::size_t>(partition_size(part));
    MatQ nk = jordan_matrix(part);
    offsets.push_back(off);
    nilpotents.push_back(nk);
    for (std::size_t i = 0; i < m; ++i) nk(i, i) = s.alphas.back();
    x.set_block(off, off, nk);
    // x* = beta_j on the j-th Jordan block, betas distinct, weighted sum zero
    std::vector<Rational> beta(part.size(), 0);
    if (part.size() > 1) {
      while (true) {
        Rational weighted = 0;
        for (std::size_t j = 0; j + 1 < part.size(); ++j) {
          beta[j] = random_rational(rng, 4);
          weighted += beta[j] * part[j];
        }
        beta.back() = -weighted / part.back();
        std::vector<Rational> sorted = beta;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
      }
    }
    std::size_t o = off;
    for (std::size_t j = 0; j < part.size(); ++j) {
      for (int i = 0; i < part[j]; ++i) xs(o + i, o + i) = beta[j];
      v(o + part[j] - 1, 0) = 1;
      o += static_cast<std::size_t>(part[j]);
    }
    off += m;
  }
  MatQ g = MatQ::identity(n);
  if (conjugate_point) g = random_invertible(n, rng, 2);
  s.point = conjugate(ADHMQ{x, xs, v, MatQ(1, n)}, g);
  MatQ gi = *inverse(g);
  auto conj = [&](const MatQ& m) { return g * m * gi; };
  MatQ zero(n, n), zv(n, 1);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    MatQ p(n, n);
    for (int i = 0; i < partition_size(mu[k]); ++i) p(offsets[k] + i, offsets[k] + i) = 1;
    s.frame.push_back({conj(p), zero, zv});
  }
  for (std::size_t k = 0; k < mu.size(); ++k) {
    std::size_t m = nilpotents[k].rows();
    for (const auto& c : centralizer_basis(nilpotents[k])) {
      MatQ tl = c - MatQ::identity(m) * Rational(c.trace() / static_cast<int>(m));
      if (tl.is_zero_matrix()) continue;
      MatQ e(n, n);
      e.set_block(offsets[k], offsets[k], tl);
      s.frame.push_back({zero, conj(e), zv});
    }
  }
  for (std::size_t i = 0; i < n; ++i) s.frame.push_back({zero, zero, MatQ::unit(n, 1, i, 0)});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MatQ e = MatQ::unit(n, n, i, j);
      s.frame.push_back({commutator(e, s.point.x), commutator(e, s.point.xs), e * s.point.v});
    }
  return s;
}

std::size_t adhm_frame_rank(const std::vector<ADHMTangent>& frame) {
  if (frame.empty()) return 0;
  std::size_t n = frame.front().dx.rows();
  RowSpace span(2 * n * n + n);
  for (const auto& t : frame) {
    VecQ row = flatten(t.dx);
    VecQ b = flatten(t.dxs);
    row.insert(row.end(), b.begin(), b.end());
    VecQ c = flatten(t.dv);
    row.insert(row.end(), c.begin(), c.end());
    span.insert(row);
  }
  return span.dim();
}

}  // namespace qdg
