#include "qdg/repvar.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "qdg/errors.hpp"
#include "qdg/exact_linalg.hpp"
#include "qdg/numeric.hpp"

namespace qdg {

template <class T>
const Matrix<T>& MatrixRep<T>::at(const std::string& id) const {
  auto it = mats.find(id);
  if (it == mats.end()) throw InputError("representation has no matrix for '" + id + "'");
  return it->second;
}

template <class T>
int MatrixRep<T>::dim(const std::string& vertex) const {
  auto it = dims.find(vertex);
  if (it == dims.end()) throw InputError("no dimension for vertex '" + vertex + "'");
  return it->second;
}

template <class T>
void validate_rep(const MatrixRep<T>& rho) {
  validate_dimension_vector(*rho.quiver, rho.dims);
  for (const auto& e : rho.quiver->edges()) {
    if (e.degree != 0) continue;
    const auto& m = rho.at(e.id);
    if (static_cast<int>(m.rows()) != rho.dim(e.src) || static_cast<int>(m.cols()) != rho.dim(e.tgt))
      throw InputError("matrix for '" + e.id + "' has shape " + m.shape());
  }
}

RepQ random_rep_q(QuiverPtr q, const DimensionVector& dims, std::mt19937_64& rng, int bound) {
  RepQ r{q, dims, {}};
  validate_dimension_vector(*q, dims);
  for (const auto& e : q->edges())
    if (e.degree == 0) r.mats[e.id] = random_matrix(dims.at(e.src), dims.at(e.tgt), rng, bound);
  return r;
}

RepD random_rep_d(QuiverPtr q, const DimensionVector& dims, std::mt19937_64& rng) {
  RepD r{q, dims, {}};
  validate_dimension_vector(*q, dims);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const auto& e : q->edges()) {
    if (e.degree != 0) continue;
    MatD m(dims.at(e.src), dims.at(e.tgt));
    for (auto& v : m.data()) v = g(rng);
    r.mats[e.id] = m;
  }
  return r;
}

RepD to_double(const RepQ& rho) {
  RepD r{rho.quiver, rho.dims, {}};
  for (const auto& [id, m] : rho.mats) r.mats[id] = to_double(m);
  return r;
}

RepQ conjugate(const RepQ& rho, const std::map<std::string, MatQ>& g) {
  std::map<std::string, MatQ> ginv;
  for (const auto& [v, m] : g) {
    auto inv = inverse(m);
    if (!inv) throw InputError("conjugating matrix at '" + v + "' is singular");
    ginv[v] = *inv;
  }
  RepQ r = rho;
  for (const auto& e : rho.quiver->edges())
    if (e.degree == 0) r.mats[e.id] = g.at(e.src) * rho.at(e.id) * ginv.at(e.tgt);
  return r;
}

namespace {

template <class T>
Matrix<T> path_matrix(const Quiver& pq, const Path& p, const MatrixRep<T>& rho, bool& vanishes) {
  vanishes = false;
  int n0 = rho.dim(pq.vertices()[p.start]);
  Matrix<T> acc = Matrix<T>::identity(n0);
  for (int a : p.arrows) {
    if (pq.degree(a) != 0) {
      vanishes = true;
      return acc;
    }
    acc = acc * rho.at(pq.edge(a).id);
  }
  return acc;
}

}  // namespace

template <class T>
Matrix<T> evaluate(const NCPolynomial& p, const MatrixRep<T>& rho, const std::string& src,
                   const std::string& tgt) {
  const Quiver& pq = *p.quiver();
  Matrix<T> out(rho.dim(src), rho.dim(tgt));
  for (const auto& [path, c] : p.terms()) {
    if (pq.vertices()[path.start] != src || pq.vertices()[path_end(pq, path)] != tgt)
      throw InputError("polynomial has terms with mixed endpoints");
    bool vanishes = false;
    Matrix<T> m = path_matrix(pq, path, rho, vanishes);
    if (vanishes) continue;
    if (m.rows() != out.rows() || m.cols() != out.cols())
      throw InputError("shape mismatch evaluating a path");
    out += m * scalar_from_rational<T>(c);
  }
  return out;
}

template <class T>
Matrix<T> evaluate(const NCPolynomial& p, const MatrixRep<T>& rho) {
  if (p.is_zero()) return Matrix<T>();
  const Quiver& pq = *p.quiver();
  const Path& first = p.terms().begin()->first;
  return evaluate(p, rho, pq.vertices()[first.start], pq.vertices()[path_end(pq, first)]);
}

namespace {

// Arrows e of the rep quiver whose partner e* is also present.
std::vector<std::string> paired_arrows(const Quiver& q) {
  std::vector<std::string> out;
  for (const auto& e : q.edges()) {
    if (e.degree != 0 || e.id.back() == kStarMarker) continue;
    if (q.has_edge(star(e.id))) out.push_back(e.id);
  }
  return out;
}

}  // namespace

template <class T>
Matrix<T> moment_map(const MatrixRep<T>& rho, const std::string& vertex) {
  const Quiver& q = *rho.quiver;
  int n = rho.dim(vertex);
  Matrix<T> mu(n, n);
  for (const auto& id : paired_arrows(q)) {
    const Edge& e = q.edge(id);
    const auto& x = rho.at(id);
    const auto& xs = rho.at(star(id));
    if (e.src == vertex) mu += x * xs;
    if (e.tgt == vertex) mu -= xs * x;
  }
  return mu;
}

PolySystem truncation_equations(const DgPresentation& p, const DimensionVector& dims) {
  const QuiverPtr& q = p.algebra();
  validate_dimension_vector(*q, dims);
  PolySystem s{q, dims, p.generators_of_degree(0), {}};
  auto implied = implied_relations(p);
  for (const auto& g : p.generators_of_degree(-1)) {
    const Edge& e = q->edge(g);
    Equation eq{g, p.d(g), e.src, e.tgt, p.display_sign(g), std::nullopt};
    auto it = implied.find(g);
    if (it != implied.end()) eq.implied_by = it->second;
    s.equations.push_back(std::move(eq));
  }
  return s;
}

std::string variable_name(const std::string& id) {
  return id.size() == 1 ? "x_" + id : "x_{" + id + "}";
}

namespace {

std::string coeff_prefix(const Rational& c, bool first) {
  std::string s;
  bool neg = sgn(c) < 0;
  if (first)
    s = neg ? "-" : "";
  else
    s = neg ? " - " : " + ";
  Rational a = abs(c);
  if (a != 1) s += a.get_str() + " ";
  return s;
}

std::string product_name(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "1_" + q.vertices()[p.start];
  std::string s;
  for (int a : p.arrows) s += variable_name(q.edge(a).id);
  return s;
}

}  // namespace

std::string format_equation(const Equation& eq) {
  const Quiver& q = *eq.lhs.quiver();
  NCPolynomial poly = eq.lhs * Rational(eq.display_sign);
  std::vector<std::pair<Path, Rational>> lhs;
  std::vector<std::pair<Path, Rational>> rhs;
  for (const auto& [p, c] : poly.terms()) {
    if (p.arrows.size() == 1 && q.edge(p.arrows[0]).id.back() == kStarMarker)
      rhs.emplace_back(p, -c);
    else
      lhs.emplace_back(p, c);
  }
  auto render = [&](std::vector<std::pair<Path, Rational>>& terms) {
    if (terms.empty()) return std::string("0");
    std::string out;
    std::vector<bool> used(terms.size(), false);
    bool first = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (used[i]) continue;
      const auto& [p, c] = terms[i];
      if (p.arrows.size() == 2) {
        Path rev{q.src(p.arrows[1]), {p.arrows[1], p.arrows[0]}};
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
          if (used[j] || !(terms[j].first == rev) || terms[j].second != -c) continue;
          used[i] = used[j] = true;
          // Lead with the positively signed ordering.
          const Path& lead = sgn(c) > 0 ? p : rev;
          out += coeff_prefix(abs(c), first) + "[" + variable_name(q.edge(lead.arrows[0]).id) + "," +
                 variable_name(q.edge(lead.arrows[1]).id) + "]";
          break;
        }
        if (used[i]) {
          first = false;
          continue;
        }
      }
      used[i] = true;
      out += coeff_prefix(c, first) + product_name(q, p);
      first = false;
    }
    return out;
  };
  return render(lhs) + " = " + render(rhs);
}

std::string format_system(const PolySystem& s, bool include_implied) {
  std::ostringstream os;
  for (const auto& eq : s.equations) {
    if (eq.implied_by && !include_implied) continue;
    os << format_equation(eq);
    if (eq.implied_by) os << "    (implied by d" << *eq.implied_by << ")";
    os << "\n";
  }
  return os.str();
}

template <class T>
double residual(const PolySystem& s, const MatrixRep<T>& rho) {
  double total = 0;
  for (const auto& eq : s.equations) {
    double f = frobenius_norm(evaluate(eq.lhs, rho, eq.src, eq.tgt));
    total += f * f;
  }
  return std::sqrt(total);
}

template <class T>
Matrix<T> jacobian(const PolySystem& s, const MatrixRep<T>& rho) {
  const Quiver& q = *s.algebra;
  std::map<std::string, std::size_t> var_offset;
  std::size_t cols = 0;
  for (const auto& v : s.variables) {
    var_offset[v] = cols;
    const Edge& e = q.edge(v);
    cols += static_cast<std::size_t>(rho.dim(e.src) * rho.dim(e.tgt));
  }
  std::size_t rows = 0;
  std::vector<std::size_t> eq_offset;
  for (const auto& eq : s.equations) {
    eq_offset.push_back(rows);
    rows += static_cast<std::size_t>(rho.dim(eq.src) * rho.dim(eq.tgt));
  }
  Matrix<T> J(rows, cols);
  for (std::size_t k = 0; k < s.equations.size(); ++k) {
    const auto& eq = s.equations[k];
    const Quiver& pq = *eq.lhs.quiver();
    std::size_t ec = static_cast<std::size_t>(rho.dim(eq.tgt));
    for (const auto& [path, c] : eq.lhs.terms()) {
      bool graded = false;
      for (int a : path.arrows) graded = graded || pq.degree(a) != 0;
      if (graded) continue;
      std::size_t L = path.arrows.size();
      // prefix[i] = rho(f1..fi), suffix[i] = rho(f{i+1}..fL)
      std::vector<Matrix<T>> prefix(L + 1), suffix(L + 1);
      prefix[0] = Matrix<T>::identity(rho.dim(pq.vertices()[path.start]));
      for (std::size_t i = 0; i < L; ++i)
        prefix[i + 1] = prefix[i] * rho.at(pq.edge(path.arrows[i]).id);
      suffix[L] = Matrix<T>::identity(rho.dim(eq.tgt));
      for (std::size_t i = L; i-- > 0;) suffix[i] = rho.at(pq.edge(path.arrows[i]).id) * suffix[i + 1];
      T cc = scalar_from_rational<T>(c);
      for (std::size_t i = 0; i < L; ++i) {
        const std::string& id = pq.edge(path.arrows[i]).id;
        auto vo = var_offset.find(id);
        if (vo == var_offset.end()) continue;
        const Matrix<T>& left = prefix[i];
        const Matrix<T>& right = suffix[i + 1];
        std::size_t xc = right.rows();
        for (std::size_t r = 0; r < left.rows(); ++r)
          for (std::size_t j = 0; j < left.cols(); ++j) {
            if (is_zero(left(r, j))) continue;
            T lc = cc * left(r, j);
            for (std::size_t kk = 0; kk < right.rows(); ++kk)
              for (std::size_t t = 0; t < right.cols(); ++t) {
                if (is_zero(right(kk, t))) continue;
                J(eq_offset[k] + r * ec + t, vo->second + j * xc + kk) += lc * right(kk, t);
              }
          }
      }
    }
  }
  return J;
}

std::size_t jacobian_rank(const PolySystem& s, const RepQ& rho) {
  for (const auto& eq : s.equations)
    if (!evaluate(eq.lhs, rho, eq.src, eq.tgt).is_zero_matrix())
      throw PreconditionError("jacobian_rank: point does not solve the system");
  return rank(jacobian(s, rho));
}

std::size_t jacobian_rank(const PolySystem& s, const RepD& rho, double tol, double residual_tol) {
  if (residual(s, rho) > residual_tol)
    throw PreconditionError("jacobian_rank: residual above tolerance");
  return numeric_rank(jacobian(s, rho), tol);
}

template <class T>
std::map<std::string, Matrix<T>> potential_gradient(const Potential& w, const MatrixRep<T>& rho) {
  std::map<std::string, Matrix<T>> out;
  for (const auto& e : w.quiver()->edges())
    out[e.id] = evaluate(cyclic_derivative(w, e.id), rho, e.tgt, e.src).transpose();
  return out;
}

template <class T>
T trace_of_potential(const Potential& w, const MatrixRep<T>& rho) {
  T total(0);
  const Quiver& q = *w.quiver();
  for (const auto& [p, c] : w.poly().terms()) {
    bool vanishes = false;
    Matrix<T> m = path_matrix(q, p, rho, vanishes);
    if (!vanishes) total += scalar_from_rational<T>(c) * m.trace();
  }
  return total;
}

std::map<std::string, MatD> finite_difference_gradient(const Potential& w, const RepD& rho, double h) {
  std::map<std::string, MatD> out;
  for (const auto& e : w.quiver()->edges()) {
    MatD g(rho.at(e.id).rows(), rho.at(e.id).cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) {
        RepD plus = rho, minus = rho;
        plus.mats[e.id](i, j) += h;
        minus.mats[e.id](i, j) -= h;
        g(i, j) = (trace_of_potential(w, plus) - trace_of_potential(w, minus)) / (2 * h);
      }
    out[e.id] = g;
  }
  return out;
}

template <class T>
TangentComplex<T> tangent_complex_g2(const MatrixRep<T>& rho, double tol) {
  const Quiver& q = *rho.quiver;
  validate_rep(rho);
  auto pairs = paired_arrows(q);
  std::set<std::string> covered;
  for (const auto& id : pairs) {
    covered.insert(id);
    covered.insert(star(id));
  }
  for (const auto& e : q.edges())
    if (e.degree == 0 && !covered.count(e.id))
      throw InputError("tangent complex needs a doubled quiver; '" + e.id + "' has no partner");
  for (const auto& v : q.vertices()) {
    Matrix<T> mu = moment_map(rho, v);
    bool ok;
    if constexpr (std::is_same_v<T, Rational>)
      ok = mu.is_zero_matrix();
    else
      ok = max_abs(mu) <= tol;
    if (!ok) throw PreconditionError("tangent complex: moment map is nonzero at '" + v + "'");
  }

  std::vector<std::string> arrows;
  std::map<std::string, std::size_t> toff;
  std::size_t tdim = 0;
  for (const auto& e : q.edges()) {
    if (e.degree != 0) continue;
    arrows.push_back(e.id);
    toff[e.id] = tdim;
    tdim += static_cast<std::size_t>(rho.dim(e.src) * rho.dim(e.tgt));
  }
  std::map<std::string, std::size_t> goff;
  std::size_t gdim = 0;
  for (const auto& v : q.vertices()) {
    goff[v] = gdim;
    gdim += static_cast<std::size_t>(rho.dim(v) * rho.dim(v));
  }

  TangentComplex<T> c{Matrix<T>(tdim, gdim), Matrix<T>(gdim, tdim), Matrix<T>(gdim, gdim),
                      Matrix<T>(tdim, tdim)};

  // A: a -> (a_s rho(f) - rho(f) a_t)_f
  for (const auto& v : q.vertices()) {
    std::size_t n = rho.dim(v);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t col = goff[v] + j * n + k;
        for (const auto& id : arrows) {
          const Edge& e = q.edge(id);
          const auto& m = rho.at(id);
          std::size_t w = m.cols();
          if (e.src == v)
            for (std::size_t t = 0; t < w; ++t) c.A(toff[id] + j * w + t, col) += m(k, t);
          if (e.tgt == v)
            for (std::size_t r = 0; r < m.rows(); ++r) c.A(toff[id] + r * w + k, col) -= m(r, j);
        }
      }
  }

  // B: derivative of the moment map.
  auto add_block = [&](const std::string& v, std::size_t col, const Matrix<T>& m, int sign) {
    std::size_t n = rho.dim(v);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t t = 0; t < n; ++t)
        if (!is_zero(m(r, t))) c.B(goff[v] + r * n + t, col) += sign > 0 ? m(r, t) : T(-m(r, t));
  };
  for (const auto& id : pairs) {
    const Edge& e = q.edge(id);
    const auto& x = rho.at(id);
    const auto& xs = rho.at(star(id));
    for (std::size_t j = 0; j < x.rows(); ++j)
      for (std::size_t k = 0; k < x.cols(); ++k) {
        Matrix<T> d = Matrix<T>::unit(x.rows(), x.cols(), j, k);
        std::size_t col = toff[id] + j * x.cols() + k;
        add_block(e.src, col, d * xs, 1);
        add_block(e.tgt, col, xs * d, -1);
      }
    for (std::size_t j = 0; j < xs.rows(); ++j)
      for (std::size_t k = 0; k < xs.cols(); ++k) {
        Matrix<T> d = Matrix<T>::unit(xs.rows(), xs.cols(), j, k);
        std::size_t col = toff[star(id)] + j * xs.cols() + k;
        add_block(e.src, col, x * d, 1);
        add_block(e.tgt, col, d * x, -1);
      }
  }

  for (const auto& v : q.vertices()) {
    std::size_t n = rho.dim(v);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c.gl_pairing(goff[v] + j * n + k, goff[v] + k * n + j) = T(1);
  }
  for (const auto& id : pairs) {
    const auto& x = rho.at(id);
    for (std::size_t j = 0; j < x.rows(); ++j)
      for (std::size_t k = 0; k < x.cols(); ++k) {
        std::size_t u = toff[id] + j * x.cols() + k;
        std::size_t v = toff[star(id)] + k * x.rows() + j;
        c.omega(u, v) += T(1);
        c.omega(v, u) -= T(1);
      }
  }
  return c;
}

template <class T>
double composition_defect(const TangentComplex<T>& c) {
  return max_abs(c.B * c.A);
}

template <class T>
double duality_defect(const TangentComplex<T>& c) {
  return max_abs(c.B.transpose() * c.gl_pairing - c.omega.transpose() * c.A);
}

QuiverPtr doubled_jordan() {
  static const QuiverPtr q = make_quiver(double_quiver(Quiver({"0"}, {Edge{"a", "0", "0", 0}})));
  return q;
}

RepQ sample_commuting_rep(int n, std::mt19937_64& rng) {
  auto q = doubled_jordan();
  std::uniform_int_distribution<int> variant(0, 2);
  MatQ x, xs;
  auto random_poly_of = [&](const MatQ& m) {
    VecQ coeffs;
    for (int k = 0; k < n; ++k) coeffs.push_back(random_rational(rng, 2));
    return evaluate_poly(UPoly(coeffs), m);
  };
  switch (variant(rng)) {
    case 0:
      x = random_matrix(n, n, rng, 3);
      xs = random_poly_of(x);
      break;
    case 1:
      xs = random_matrix(n, n, rng, 3);
      x = random_poly_of(xs);
      break;
    default: {
      // Repeated eigenvalues with arbitrary blocks on each eigenspace.
      std::uniform_int_distribution<int> split(1, n);
      int m1 = split(rng);
      MatQ d(n, n), b(n, n);
      Rational a1 = random_rational(rng, 3), a2 = a1 + 1;
      for (int i = 0; i < n; ++i) d(i, i) = i < m1 ? a1 : a2;
      b.set_block(0, 0, random_matrix(m1, m1, rng, 3));
      if (m1 < n) b.set_block(m1, m1, random_matrix(n - m1, n - m1, rng, 3));
      MatQ g = random_invertible(n, rng);
      MatQ gi = *inverse(g);
      x = g * d * gi;
      xs = g * b * gi;
      break;
    }
  }
  RepQ r{q, {{"0", n}}, {{"a", x}, {star("a"), xs}}};
  return r;
}

template struct MatrixRep<Rational>;
template struct MatrixRep<double>;
template void validate_rep(const RepQ&);
template void validate_rep(const RepD&);
template MatQ evaluate(const NCPolynomial&, const RepQ&);
template MatD evaluate(const NCPolynomial&, const RepD&);
template MatQ evaluate(const NCPolynomial&, const RepQ&, const std::string&, const std::string&);
template MatD evaluate(const NCPolynomial&, const RepD&, const std::string&, const std::string&);
template MatQ moment_map(const RepQ&, const std::string&);
template MatD moment_map(const RepD&, const std::string&);
template double residual(const PolySystem&, const RepQ&);
template double residual(const PolySystem&, const RepD&);
template MatQ jacobian(const PolySystem&, const RepQ&);
template MatD jacobian(const PolySystem&, const RepD&);
template std::map<std::string, MatQ> potential_gradient(const Potential&, const RepQ&);
template std::map<std::string, MatD> potential_gradient(const Potential&, const RepD&);
template Rational trace_of_potential(const Potential&, const RepQ&);
template double trace_of_potential(const Potential&, const RepD&);
template TangentComplex<Rational> tangent_complex_g2(const RepQ&, double);
template TangentComplex<double> tangent_complex_g2(const RepD&, double);
template double composition_defect(const TangentComplex<Rational>&);
template double composition_defect(const TangentComplex<double>&);
template double duality_defect(const TangentComplex<Rational>&);
template double duality_defect(const TangentComplex<double>&);

}  // namespace qdg
