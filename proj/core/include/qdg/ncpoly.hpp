#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qdg/quiver.hpp"
#include "qdg/rational.hpp"

namespace qdg {

// Finite rational combination of paths in a fixed (possibly graded) quiver.
class NCPolynomial {
 public:
  explicit NCPolynomial(QuiverPtr q);

  static NCPolynomial from_path(QuiverPtr q, Path p, const Rational& c = 1);
  static NCPolynomial edge(QuiverPtr q, const std::string& id, const Rational& c = 1);
  static NCPolynomial idempotent(QuiverPtr q, const std::string& vertex);
  // Composable word of edge ids read left to right.
  static NCPolynomial word(QuiverPtr q, const std::vector<std::string>& ids,
                           const Rational& c = 1);

  const std::map<Path, Rational>& terms() const { return terms_; }
  const QuiverPtr& quiver() const { return q_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Path& p) const;

  void add_term(const Path& p, const Rational& c);

  // Degree of the terms when homogeneous; nullopt for zero or mixed polynomials.
  std::optional<int> degree() const;
  bool is_homogeneous() const;
  std::size_t max_length() const;

  // e_v * this * e_w.
  NCPolynomial localize(int v, int w) const;

  NCPolynomial& operator+=(const NCPolynomial& o);
  NCPolynomial& operator-=(const NCPolynomial& o);
  NCPolynomial& operator*=(const Rational& c);

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
  friend NCPolynomial operator-(NCPolynomial a) { return a *= Rational(-1); }
  friend NCPolynomial operator*(NCPolynomial a, const Rational& c) { return a *= c; }
  friend NCPolynomial operator*(const Rational& c, NCPolynomial a) { return a *= c; }
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b);
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b);

  std::string to_string() const;

 private:
  void require_same_quiver(const NCPolynomial& o) const;

  QuiverPtr q_;
  std::map<Path, Rational> terms_;
};

inline NCPolynomial multiply(const NCPolynomial& a, const NCPolynomial& b) { return a * b; }
NCPolynomial bracket(const NCPolynomial& a, const NCPolynomial& b);

// Re-expresses p in another quiver that shares its vertex and edge ids.
NCPolynomial transport(const NCPolynomial& p, QuiverPtr target);

std::string monomial_string(const Quiver& q, const Path& p);

// Linear combination of cycles of length >= 1.
class Potential {
 public:
  explicit Potential(NCPolynomial w);
  static Potential zero(QuiverPtr q) { return Potential(NCPolynomial(std::move(q))); }

  const NCPolynomial& poly() const { return w_; }
  const QuiverPtr& quiver() const { return w_.quiver(); }

 private:
  NCPolynomial w_;
};

// Removes each occurrence of e and reads the rest of the cycle from the deletion point.
NCPolynomial cyclic_derivative(const Potential& w, const std::string& edge_id);

// Sum over arrows of e * dW/de - dW/de * e.
NCPolynomial sum_commutator(const Potential& w);
bool sum_commutator_identity_check(const Potential& w);

// Parses e.g. "x.y.z - y.x.z", "xyz - yxz" or "2/3 abc + ca'b". Edge ids are matched
// greedily (longest first); a leading coefficient must be followed by whitespace.
NCPolynomial parse_polynomial(QuiverPtr q, std::string_view text);

// Random combination of `terms` cycles of length <= max_len with small integer coefficients.
Potential random_potential(QuiverPtr q, std::size_t max_len, std::size_t terms,
                           std::mt19937_64& rng);

}  // namespace qdg
