#include "qdg/commvar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <set>

#include "qdg/errors.hpp"
#include "qdg/numeric.hpp"

namespace qdg {

void validate_jordan_spec(const JordanSpec& spec) {
  std::set<Rational> seen;
  for (const auto& b : spec) {
    if (b.type.empty()) throw InputError("Jordan block with empty nilpotent type");
    validate_partition(b.type);
    if (!seen.insert(b.eigenvalue).second)
      throw InputError("Jordan spec eigenvalues must be distinct (repeated " + to_string(b.eigenvalue) + ")");
  }
}

int jordan_size(const JordanSpec& spec) {
  int n = 0;
  for (const auto& b : spec) n += partition_size(b.type);
  return n;
}

std::string to_string(const JordanSpec& spec) {
  std::string s;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (k) s += ";";
    std::string t = to_string(spec[k].type);
    s += to_string(spec[k].eigenvalue) + ":" + t.substr(1, t.size() - 2);
  }
  return s;
}

JordanSpec parse_jordan_spec(const std::string& text) {
  JordanSpec spec;
  std::size_t pos = 0;
  while (true) {
    std::size_t semi = text.find(';', pos);
    std::string chunk = text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    std::size_t c = chunk.find(':');
    if (c == std::string::npos) throw InputError("Jordan spec block needs 'eigenvalue:type', got '" + chunk + "'");
    Partition type = parse_partition(chunk.substr(c + 1));
    Rational eigenvalue = parse_rational(chunk.substr(0, c));
    spec.push_back({eigenvalue, type});
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  validate_jordan_spec(spec);
  return spec;
}

MatQ jordan_matrix(const JordanSpec& spec) {
  validate_jordan_spec(spec);
  std::size_t n = static_cast<std::size_t>(jordan_size(spec));
  MatQ m(n, n);
  std::size_t off = 0;
  for (const auto& b : spec)
    for (int part : b.type) {
      for (int i = 0; i < part; ++i) {
        m(off + i, off + i) = b.eigenvalue;
        if (i + 1 < part) m(off + i, off + i + 1) = 1;
      }
      off += static_cast<std::size_t>(part);
    }
  return m;
}

MatQ jordan_matrix(const Partition& nilpotent_type) { return jordan_matrix(JordanSpec{{0, nilpotent_type}}); }

MatQ iterated_kernel_jordan(const Partition& lambda) {
  validate_partition(lambda);
  Partition c = conjugate(lambda);
  std::size_t n = static_cast<std::size_t>(partition_size(lambda));
  MatQ m(n, n);
  std::size_t row = 0;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    std::size_t col = row + static_cast<std::size_t>(c[k]);
    for (int i = 0; i < c[k + 1]; ++i) m(row + i, col + i) = 1;
    row = col;
  }
  return m;
}

namespace {

std::vector<MatQ> to_matrices(const std::vector<VecQ>& vs, std::size_t n) {
  std::vector<MatQ> out;
  for (const auto& v : vs) out.push_back(unflatten(v, n, n));
  return out;
}

void require_square(const MatQ& x) {
  if (!x.square()) throw InputError("expected a square matrix, got " + x.shape());
}

}  // namespace

std::vector<MatQ> centralizer_basis(const MatQ& x) {
  require_square(x);
  std::size_t n = x.rows();
  // ad_x(y) = xy - yx on row-major vec(y)
  MatQ ad(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ad(i * n + j, k * n + j) += x(i, k);
        ad(i * n + j, i * n + k) -= x(k, j);
      }
  return to_matrices(nullspace(ad), n);
}

std::vector<MatQ> commutator_space(const std::vector<MatQ>& c) {
  if (c.empty()) return {};
  std::size_t n = c.front().rows();
  RowSpace span(n * n);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) span.insert(flatten(commutator(c[i], c[j])));
  return to_matrices(span.basis(), n);
}

std::vector<MatQ> commutator_space(const MatQ& x) { return commutator_space(centralizer_basis(x)); }

CodimReport codim_theorem_check(const JordanSpec& spec) {
  MatQ x = jordan_matrix(spec);
  auto cent = centralizer_basis(x);
  CodimReport r;
  r.centralizer_dim = cent.size();
  r.commutator_dim = commutator_space(cent).size();
  for (const auto& b : spec) r.predicted_codim += static_cast<std::size_t>(b.type.front());
  r.pass = r.centralizer_dim - r.commutator_dim == r.predicted_codim;
  return r;
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::Exact: return "exact";
    case Certificate::Numeric: return "numeric";
    default: return "inconclusive";
  }
}

namespace {

MatQ combination(const std::vector<MatQ>& basis, const VecQ& coeffs) {
  MatQ m(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!qdg::is_zero(coeffs[i])) m += basis[i] * coeffs[i];
  return m;
}

MatD combination(const std::vector<MatD>& basis, const Eigen::VectorXd& coeffs) {
  MatD m(basis.front().rows(), basis.front().cols());
  for (std::size_t i = 0; i < basis.size(); ++i) m += basis[i] * coeffs(static_cast<Eigen::Index>(i));
  return m;
}

Eigen::VectorXd as_vector(const MatD& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data().data(), static_cast<Eigen::Index>(m.size()));
}

// Damped Gauss-Newton for [Y(a), Z(b)] = t over centralizer coordinates.
bool levenberg_marquardt(const std::vector<MatD>& basis, const MatD& t, std::mt19937_64& rng,
                         double tol, CommutatorSolve& out) {
  const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
  std::normal_distribution<double> normal;
  Eigen::VectorXd target = as_vector(t);
  for (int restart = 0; restart < 12; ++restart) {
    Eigen::VectorXd th(2 * m);
    for (Eigen::Index i = 0; i < 2 * m; ++i) th(i) = normal(rng);
    double lambda = 1e-3;
    auto resid = [&](const Eigen::VectorXd& p) {
      MatD y = combination(basis, p.head(m)), z = combination(basis, p.tail(m));
      return Eigen::VectorXd(as_vector(commutator(y, z)) - target);
    };
    Eigen::VectorXd r = resid(th);
    for (int it = 0; it < 400 && r.norm() > tol; ++it) {
      MatD y = combination(basis, th.head(m)), z = combination(basis, th.tail(m));
      Eigen::MatrixXd jac(r.size(), 2 * m);
      for (Eigen::Index i = 0; i < m; ++i) {
        jac.col(i) = as_vector(commutator(basis[static_cast<std::size_t>(i)], z));
        jac.col(m + i) = as_vector(commutator(y, basis[static_cast<std::size_t>(i)]));
      }
      Eigen::MatrixXd jtj = jac.transpose() * jac;
      Eigen::VectorXd g = jac.transpose() * r;
      bool improved = false;
      for (int tries = 0; tries < 20 && !improved; ++tries) {
        Eigen::MatrixXd a = jtj;
        a.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
        Eigen::VectorXd step = a.ldlt().solve(-g);
        Eigen::VectorXd cand = th + step;
        Eigen::VectorXd rc = resid(cand);
        if (rc.norm() < r.norm()) {
          th = cand;
          r = rc;
          lambda = std::max(lambda / 3, 1e-12);
          improved = true;
        } else {
          lambda *= 4;
        }
      }
      if (!improved) break;
    }
    if (r.norm() <= tol) {
      out.y_num = combination(basis, th.head(m));
      out.z_num = combination(basis, th.tail(m));
      out.residual = r.norm();
      return true;
    }
    out.residual = out.residual == 0 ? r.norm() : std::min(out.residual, r.norm());
  }
  return false;
}

}  // namespace

CommutatorSolve solve_commutator(const MatQ& x, const MatQ& t, std::mt19937_64& rng, double tol) {
  require_square(x);
  if (t.rows() != x.rows() || t.cols() != x.cols()) throw InputError("solve_commutator: size mismatch");
  CommutatorSolve out;
  std::size_t n = x.rows();
  if (t.is_zero_matrix()) {
    out.certificate = Certificate::Exact;
    out.y = out.z = MatQ(n, n);
    return out;
  }
  auto cent = centralizer_basis(x);
  if (cent.empty()) return out;
  for (int attempt = 0; attempt < 10; ++attempt) {
    VecQ a(cent.size());
    for (auto& c : a) c = random_rational(rng, 3);
    MatQ y = combination(cent, a);
    std::vector<VecQ> cols;
    for (const auto& b : cent) cols.push_back(flatten(commutator(y, b)));
    auto beta = solve(from_columns(cols, n * n), flatten(t));
    if (beta) {
      out.certificate = Certificate::Exact;
      out.y = y;
      out.z = combination(cent, *beta);
      return out;
    }
  }
  double scale = frobenius_norm(t);
  std::vector<MatD> basis;
  for (const auto& b : cent) basis.push_back(to_double(b) * (1.0 / std::max(1.0, frobenius_norm(b))));
  if (levenberg_marquardt(basis, to_double(t) * (1.0 / scale), rng, tol, out)) {
    out.certificate = Certificate::Numeric;
    out.y_num = out.y_num * scale;
  }
  return out;
}

SetSpanReport commutator_set_equals_span(const MatQ& x, std::size_t trials, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  auto space = commutator_space(x);
  SetSpanReport rep;
  if (space.empty()) return rep;
  for (std::size_t k = 0; k < trials; ++k) {
    VecQ c(space.size());
    for (auto& v : c) v = random_rational(rng, 3);
    CommutatorSolve s = solve_commutator(x, combination(space, c), rng, tol);
    ++rep.trials;
    switch (s.certificate) {
      case Certificate::Exact: ++rep.exact; break;
      case Certificate::Numeric: ++rep.numeric; break;
      default: ++rep.inconclusive;
    }
    rep.max_residual = std::max(rep.max_residual, s.residual);
  }
  return rep;
}

bool lambda_membership(const MatQ& x, const MatQ& t) {
  require_square(x);
  if (t.rows() != x.rows() || t.cols() != x.cols()) throw InputError("lambda_membership: size mismatch");
  RowSpace span(x.size());
  for (const auto& b : commutator_space(x)) span.insert(flatten(b));
  return span.contains(flatten(t));
}

LambdaMuSample sample_lambda_mu(const Partition& mu, std::uint64_t seed, bool conjugate_point) {
  validate_partition(mu);
  if (mu.empty()) throw InputError("sample_lambda_mu needs a nonempty partition");
  std::mt19937_64 rng(seed);
  std::size_t n = static_cast<std::size_t>(partition_size(mu));
  LambdaMuSample s;
  s.mu = mu;
  // strictly increasing, hence distinct
  Rational a = random_rational(rng, 3);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    s.eigenvalues.push_back(a);
    a += Rational(1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2));
  }
  MatQ d(n, n), t(n, n);
  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    std::size_t m = static_cast<std::size_t>(mu[k]);
    offsets.push_back(off);
    for (std::size_t i = 0; i < m; ++i) d(off + i, off + i) = s.eigenvalues[k];
    MatQ blk = random_matrix(m, m, rng, 2);
    blk(0, 0) -= blk.trace();
    t.set_block(off, off, blk);
    off += m;
  }
  s.g = conjugate_point ? random_invertible(n, rng, 2) : MatQ::identity(n);
  MatQ ginv = *inverse(s.g);
  auto conj = [&](const MatQ& m) { return s.g * m * ginv; };
  s.x = conj(d);
  s.t = conj(t);
  MatQ zero(n, n);
  for (std::size_t k = 0; k < mu.size(); ++k) {
    MatQ p(n, n);
    for (int i = 0; i < mu[k]; ++i) p(offsets[k] + i, offsets[k] + i) = 1;
    s.frame.emplace_back(conj(p), zero);
  }
  for (std::size_t k = 0; k < mu.size(); ++k) {
    std::size_t o = offsets[k], m = static_cast<std::size_t>(mu[k]);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j && i + 1 == m) continue;
        MatQ e(n, n);
        e(o + i, o + j) = 1;
        if (i == j) e(o + i + 1, o + i + 1) = -1;
        s.frame.emplace_back(zero, conj(e));
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MatQ e = MatQ::unit(n, n, i, j);
      s.frame.emplace_back(commutator(e, s.x), commutator(e, s.t));
    }
  return s;
}

Rational omega(const TangentPair& u, const TangentPair& v) {
  return (u.first * v.second).trace() - (u.second * v.first).trace();
}

namespace {

VecQ stack(const TangentPair& p) {
  VecQ v = flatten(p.first);
  VecQ w = flatten(p.second);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

}  // namespace

std::size_t frame_rank(const std::vector<TangentPair>& frame) {
  if (frame.empty()) return 0;
  RowSpace span(2 * frame.front().first.size());
  for (const auto& p : frame) span.insert(stack(p));
  return span.dim();
}

std::size_t frame_rank_numeric(const std::vector<TangentPair>& frame, double rel_tol) {
  if (frame.empty()) return 0;
  std::size_t dim = 2 * frame.front().first.size();
  MatD m(frame.size(), dim);
  for (std::size_t r = 0; r < frame.size(); ++r) {
    VecQ v = stack(frame[r]);
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = v[c].get_d();
  }
  return numeric_rank(m, rel_tol);
}

Rational isotropy_exact(const std::vector<TangentPair>& frame) {
  Rational best = 0;
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      Rational w = abs_value(omega(frame[i], frame[j]));
      if (w > best) best = w;
    }
  return best;
}

double isotropy_check(const std::vector<TangentPair>& frame) {
  std::vector<std::pair<MatD, MatD>> f;
  for (const auto& p : frame) f.emplace_back(to_double(p.first), to_double(p.second));
  double best = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      double w = (f[i].first * f[j].second).trace() - (f[i].second * f[j].first).trace();
      best = std::max(best, std::fabs(w));
    }
  return best;
}

MatQ degeneration_xeps(const Partition& lambda, const Rational& eps) {
  if (qdg::is_zero(eps)) throw InputError("degeneration_xeps needs eps != 0");
  MatQ x = iterated_kernel_jordan(lambda);
  Partition c = conjugate(lambda);
  std::size_t off = 0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    for (int i = 0; i < c[k]; ++i) x(off + i, off + i) = eps * static_cast<int>(k);
    off += static_cast<std::size_t>(c[k]);
  }
  return x;
}

DegenerationReport check_degeneration(const Partition& lambda, const Rational& eps) {
  DegenerationReport r;
  MatQ x = iterated_kernel_jordan(lambda);
  MatQ xe = degeneration_xeps(lambda, eps);
  std::size_t n = x.rows();
  // x is nilpotent, so exp(x/eps) is a finite sum
  MatQ ex = MatQ::identity(n), term = MatQ::identity(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = term * x * Rational(1 / (eps * static_cast<int>(k)));
    ex += term;
  }
  r.intertwining = xe * ex == ex * (xe - x);
  Partition c = conjugate(lambda);
  MatQ prod = MatQ::identity(n);
  for (std::size_t k = 0; k < c.size(); ++k) prod = prod * (xe - MatQ::identity(n) * Rational(eps * static_cast<int>(k)));
  r.minimal_polynomial = prod.is_zero_matrix();
  std::map<Rational, int> expected;
  for (std::size_t k = 0; k < c.size(); ++k) expected[eps * static_cast<int>(k)] = c[k];
  std::map<Rational, int> got;
  for (const auto& [a, m] : rational_eigenvalues(xe)) got[a] = m;
  r.spectrum = got == expected;
  MatQ j = jordan_matrix(lambda), pj = MatQ::identity(n), px = MatQ::identity(n);
  r.same_type = true;
  for (std::size_t k = 1; k <= n; ++k) {
    pj = pj * j;
    px = px * x;
    if (rank(pj) != rank(px)) r.same_type = false;
  }
  r.limit_gap = max_abs(xe - x);
  return r;
}

double commutator_space_distance(const MatQ& x, const MatQ& y) {
  auto basis = commutator_space(x);
  MatD target = to_double(y);
  if (basis.empty()) return frobenius_norm(target);
  MatD a(y.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < y.size(); ++i) a(i, j) = basis[j].data()[i].get_d();
  VecD coeffs = min_norm_solve(a, target.data());
  MatD fit(y.rows(), y.cols());
  for (std::size_t j = 0; j < basis.size(); ++j) fit += to_double(basis[j]) * coeffs[j];
  return frobenius_norm(target - fit);
}

}  // namespace qdg
