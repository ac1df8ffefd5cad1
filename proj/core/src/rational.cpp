#include "qdg/rational.hpp"

#include <cmath>

#include "qdg/errors.hpp"

namespace qdg {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  if (s.empty()) throw InputError("empty rational literal");
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' )
    throw InputError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(num.begin());
  if (den[0] == '+') den.erase(den.begin());
  mpz_class n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den < 1 ? 1 : max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

std::int64_t random_nonzero(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(1, bound);
  std::bernoulli_distribution sign(0.5);
  int v = d(rng);
  return sign(rng) ? v : -v;
}

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InputError("cannot rationalize non-finite value");
  // Continued-fraction convergents h/k.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    mpz_class ai(static_cast<long>(a));
    mpz_class h2 = ai * h1 + h0;
    mpz_class k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (std::fabs(frac) < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return Rational(static_cast<long>(std::llround(x)));
  Rational q(h1, k1);
  q.canonicalize();
  return q;
}

}  // namespace qdg
