#include "qdg/ncpoly.hpp"

#include <algorithm>
#include <cctype>

#include "qdg/errors.hpp"

namespace qdg {

NCPolynomial::NCPolynomial(QuiverPtr q) : q_(std::move(q)) {
  if (!q_) throw InputError("polynomial without an ambient quiver");
}

NCPolynomial NCPolynomial::from_path(QuiverPtr q, Path p, const Rational& c) {
  NCPolynomial r(std::move(q));
  r.add_term(p, c);
  return r;
}

NCPolynomial NCPolynomial::edge(QuiverPtr q, const std::string& id, const Rational& c) {
  int e = q->edge_index(id);
  Path p{q->src(e), {e}};
  return from_path(std::move(q), p, c);
}

NCPolynomial NCPolynomial::idempotent(QuiverPtr q, const std::string& vertex) {
  int v = q->vertex_index(vertex);
  return from_path(std::move(q), Path{v, {}}, 1);
}

NCPolynomial NCPolynomial::word(QuiverPtr q, const std::vector<std::string>& ids,
                                const Rational& c) {
  if (ids.empty()) throw InputError("empty word; use idempotent()");
  Path p;
  for (const auto& id : ids) p.arrows.push_back(q->edge_index(id));
  p.start = q->src(p.arrows.front());
  if (!is_valid_path(*q, p)) throw InputError("word is not a composable path");
  return from_path(std::move(q), p, c);
}

Rational NCPolynomial::coeff(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NCPolynomial::add_term(const Path& p, const Rational& c) {
  if (qdg::is_zero(c)) return;
  if (!is_valid_path(*q_, p)) throw InputError("path is not valid in the ambient quiver");
  auto [it, inserted] = terms_.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (qdg::is_zero(it->second)) terms_.erase(it);
  }
}

std::optional<int> NCPolynomial::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = path_degree(*q_, terms_.begin()->first);
  for (const auto& [p, c] : terms_)
    if (path_degree(*q_, p) != d) return std::nullopt;
  return d;
}

bool NCPolynomial::is_homogeneous() const { return terms_.empty() || degree().has_value(); }

std::size_t NCPolynomial::max_length() const {
  std::size_t m = 0;
  for (const auto& [p, c] : terms_) m = std::max(m, p.length());
  return m;
}

NCPolynomial NCPolynomial::localize(int v, int w) const {
  NCPolynomial r(q_);
  for (const auto& [p, c] : terms_)
    if (p.start == v && path_end(*q_, p) == w) r.terms_.emplace(p, c);
  return r;
}

void NCPolynomial::require_same_quiver(const NCPolynomial& o) const {
  if (q_ != o.q_ && !(*q_ == *o.q_))
    throw InputError("polynomials live in different quivers");
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
  require_same_quiver(o);
  for (const auto& [p, c] : o.terms_) add_term(p, c);
  return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
  require_same_quiver(o);
  for (const auto& [p, c] : o.terms_) add_term(p, -c);
  return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Rational& c) {
  if (qdg::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
  a.require_same_quiver(b);
  NCPolynomial r(a.q_);
  for (const auto& [p, c] : a.terms_)
    for (const auto& [s, d] : b.terms_) {
      auto pq = concat(*a.q_, p, s);
      if (pq) r.add_term(*pq, c * d);
    }
  return r;
}

bool operator==(const NCPolynomial& a, const NCPolynomial& b) {
  return (a.q_ == b.q_ || *a.q_ == *b.q_) && a.terms_ == b.terms_;
}

NCPolynomial bracket(const NCPolynomial& a, const NCPolynomial& b) { return a * b - b * a; }

NCPolynomial transport(const NCPolynomial& p, QuiverPtr target) {
  NCPolynomial r(target);
  const Quiver& src = *p.quiver();
  for (const auto& [path, c] : p.terms()) {
    Path t;
    t.start = target->vertex_index(src.vertices()[path.start]);
    for (int a : path.arrows) t.arrows.push_back(target->edge_index(src.edge(a).id));
    r.add_term(t, c);
  }
  return r;
}

namespace {

std::string base_id(const std::string& id) {
  std::string b = id;
  while (!b.empty() && (b.back() == kStarMarker || b.back() == kPrimeMarker)) b.pop_back();
  return b;
}

}  // namespace

std::string monomial_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertices()[p.start];
  std::string s;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    const std::string& id = q.edge(p.arrows[i]).id;
    if (i && (base_id(id).size() > 1 || base_id(q.edge(p.arrows[i - 1]).id).size() > 1)) s += ".";
    s += id;
  }
  return s;
}

std::string NCPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    bool neg = sgn(c) < 0;
    Rational a = abs(c);
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (a != 1) s += a.get_str() + " ";
    s += monomial_string(*q_, p);
    first = false;
  }
  return s;
}

Potential::Potential(NCPolynomial w) : w_(std::move(w)) {
  for (const auto& [p, c] : w_.terms())
    if (!is_cycle(*w_.quiver(), p))
      throw InputError("potential term '" + monomial_string(*w_.quiver(), p) +
                       "' is not a cycle of positive length");
}

NCPolynomial cyclic_derivative(const Potential& w, const std::string& edge_id) {
  const QuiverPtr& q = w.quiver();
  int e = q->edge_index(edge_id);
  NCPolynomial r(q);
  for (const auto& [p, c] : w.poly().terms()) {
    const auto& f = p.arrows;
    std::size_t len = f.size();
    for (std::size_t i = 0; i < len; ++i) {
      if (f[i] != e) continue;
      Path rest{q->tgt(e), {}};
      for (std::size_t k = 1; k < len; ++k) rest.arrows.push_back(f[(i + k) % len]);
      r.add_term(rest, c);
    }
  }
  return r;
}

NCPolynomial sum_commutator(const Potential& w) {
  const QuiverPtr& q = w.quiver();
  NCPolynomial total(q);
  for (const auto& e : q->edges()) {
    NCPolynomial de = cyclic_derivative(w, e.id);
    total += bracket(NCPolynomial::edge(q, e.id), de);
  }
  return total;
}

bool sum_commutator_identity_check(const Potential& w) { return sum_commutator(w).is_zero(); }

namespace {

class PolyParser {
 public:
  PolyParser(QuiverPtr q, std::string_view text) : q_(std::move(q)), s_(text) {
    for (const auto& e : q_->edges()) ids_.push_back(e.id);
    std::sort(ids_.begin(), ids_.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  }

  NCPolynomial parse() {
    NCPolynomial r(q_);
    skip_ws();
    if (pos_ == s_.size()) throw InputError("empty polynomial text");
    if (s_.substr(pos_) == "0") return r;
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    while (true) {
      r += term() * Rational(sign);
      skip_ws();
      if (pos_ == s_.size()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    return r;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  NCPolynomial term() {
    skip_ws();
    Rational c = 1;
    std::size_t save = pos_;
    std::size_t k = pos_;
    while (k < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[k])) || s_[k] == '/')) ++k;
    if (k > pos_ && (k == s_.size() || std::isspace(static_cast<unsigned char>(s_[k])))) {
      c = parse_rational(s_.substr(pos_, k - pos_));
      pos_ = k;
      skip_ws();
    } else {
      pos_ = save;
    }
    std::vector<std::string> word;
    std::string idem;
    while (pos_ < s_.size()) {
      if (peek() == '.') {
        ++pos_;
        continue;
      }
      if (peek() == '+' || peek() == '-') break;
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        skip_ws();
        continue;
      }
      if (s_.compare(pos_, 2, "e_") == 0 && word.empty() && idem.empty()) {
        std::size_t e = pos_ + 2;
        while (e < s_.size() && !std::isspace(static_cast<unsigned char>(s_[e])) &&
               s_[e] != '+' && s_[e] != '-')
          ++e;
        std::string v(s_.substr(pos_ + 2, e - pos_ - 2));
        if (q_->has_vertex(v)) {
          idem = v;
          pos_ = e;
          continue;
        }
      }
      bool matched = false;
      for (const auto& id : ids_)
        if (s_.compare(pos_, id.size(), id) == 0) {
          word.push_back(id);
          pos_ += id.size();
          matched = true;
          break;
        }
      if (matched) continue;
      fail("unknown edge id");
    }
    if (!idem.empty()) {
      if (!word.empty()) fail("idempotent mixed with arrows");
      return NCPolynomial::idempotent(q_, idem) * c;
    }
    if (word.empty()) fail("empty monomial");
    return NCPolynomial::word(q_, word, c);
  }

  QuiverPtr q_;
  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string> ids_;
};

}  // namespace

NCPolynomial parse_polynomial(QuiverPtr q, std::string_view text) {
  return PolyParser(std::move(q), text).parse();
}

Potential random_potential(QuiverPtr q, std::size_t max_len, std::size_t terms,
                           std::mt19937_64& rng) {
  auto cycles = cycles_up_to(*q, max_len);
  NCPolynomial w(q);
  if (cycles.empty()) return Potential(w);
  std::uniform_int_distribution<std::size_t> pick(0, cycles.size() - 1);
  for (std::size_t k = 0; k < terms; ++k)
    w.add_term(cycles[pick(rng)], Rational(random_nonzero(rng, 5)));
  return Potential(w);
}

}  // namespace qdg
