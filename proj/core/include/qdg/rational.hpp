#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qdg {

using Rational = mpq_class;

// Parses "p/q", "-p/q" or an integer. Throws InputError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& q) { return abs(q); }

// Uniform random rational num/den with |num| <= max_num and 1 <= den <= max_den.
Rational random_rational(std::mt19937_64& rng, int max_num, int max_den = 1);

// Small nonzero random integer in [-bound, bound] \ {0}.
std::int64_t random_nonzero(std::mt19937_64& rng, int bound);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, std::int64_t max_den);

// Scalar conversions used by the templated numeric code.
template <class T>
T scalar_from_rational(const Rational& q);

template <>
inline Rational scalar_from_rational<Rational>(const Rational& q) {
  return q;
}
template <>
inline double scalar_from_rational<double>(const Rational& q) {
  return q.get_d();
}

}  // namespace qdg
