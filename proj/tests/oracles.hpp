#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qdg/matrix.hpp"
#include "qdg/ncpoly.hpp"
#include "qdg/partition.hpp"
#include "qdg/quiver.hpp"
#include "qdg/repvar.hpp"

namespace oracle {

using qdg::Rational;

// Closed walks by depth-first search over edge lists, identified up to rotation.
inline std::size_t necklace_count(const qdg::Quiver& q, std::size_t max_len) {
  std::set<std::vector<std::string>> seen;
  std::vector<std::string> word;
  std::function<void(const std::string&, const std::string&)> walk = [&](const std::string& start,
                                                                          const std::string& at) {
    if (!word.empty() && at == start) {
      std::vector<std::string> best = word;
      for (std::size_t r = 1; r < word.size(); ++r) {
        std::vector<std::string> rot(word.begin() + static_cast<long>(r), word.end());
        rot.insert(rot.end(), word.begin(), word.begin() + static_cast<long>(r));
        best = std::min(best, rot);
      }
      seen.insert(best);
    }
    if (word.size() == max_len) return;
    for (const auto& e : q.edges())
      if (e.src == at) {
        word.push_back(e.id);
        walk(start, e.tgt);
        word.pop_back();
      }
  };
  for (const auto& v : q.vertices()) walk(v, v);
  return seen.size() + q.num_vertices();
}

inline long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline long long partition_count(int n) {
  std::vector<long long> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) p[static_cast<std::size_t>(s)] += p[static_cast<std::size_t>(s - part)];
  return p[static_cast<std::size_t>(n)];
}

// Sum over shapes lambda of prod_s C(p(s) + m_s - 1, m_s), m_s the multiplicity of s in lambda.
inline long long nested_count(int n) {
  long long total = 0;
  for (const auto& lam : qdg::partitions(n)) {
    std::map<int, int> mult;
    for (int s : lam) ++mult[s];
    long long prod = 1;
    for (auto [s, m] : mult) prod *= binomial(partition_count(s) + m - 1, m);
    total += prod;
  }
  return total;
}

// Every ordered tuple of partitions with weakly decreasing sizes summing to n, sorted
// canonically inside runs of equal size and deduplicated.
inline std::size_t nested_brute_force(int n) {
  std::set<std::vector<qdg::Partition>> seen;
  std::vector<qdg::Partition> cur;
  std::function<void(int, int)> rec = [&](int rest, int cap) {
    if (rest == 0) {
      auto c = cur;
      std::stable_sort(c.begin(), c.end(), [](const qdg::Partition& a, const qdg::Partition& b) {
        int sa = qdg::partition_size(a), sb = qdg::partition_size(b);
        return sa != sb ? sa > sb : a > b;
      });
      seen.insert(c);
      return;
    }
    for (int s = std::min(rest, cap); s >= 1; --s)
      for (const auto& p : qdg::partitions(s)) {
        cur.push_back(p);
        rec(rest - s, s);
        cur.pop_back();
      }
  };
  rec(n, n);
  return seen.size();
}

// Centralizer dimension of a nilpotent of type lambda: sum of squared conjugate parts.
inline std::size_t centralizer_dim(const qdg::Partition& lambda) {
  std::size_t d = 0;
  for (int c : qdg::conjugate(lambda)) d += static_cast<std::size_t>(c * c);
  return d;
}

// Commutative polynomials in matrix-entry variables, for symbolic differentiation of tr W.
using Monomial = std::vector<int>;  // exponent per variable
using CommPoly = std::map<Monomial, Rational>;

inline void add_to(CommPoly& p, const Monomial& m, const Rational& c) {
  Rational& slot = p[m];
  slot += c;
  if (slot == 0) p.erase(m);
}

inline CommPoly multiply(const CommPoly& a, const CommPoly& b) {
  CommPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      add_to(out, m, ca * cb);
    }
  return out;
}

inline CommPoly differentiate(const CommPoly& p, std::size_t var) {
  CommPoly out;
  for (const auto& [m, c] : p)
    if (m[var] > 0) {
      Monomial d = m;
      --d[var];
      add_to(out, d, c * m[var]);
    }
  return out;
}

inline Rational evaluate(const CommPoly& p, const std::vector<Rational>& values) {
  Rational total = 0;
  for (const auto& [m, c] : p) {
    Rational term = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) term *= values[i];
    total += term;
  }
  return total;
}

// d tr W / d rho(e)_{ij} for every arrow e, obtained by symbolic expansion of tr W in the
// entries of rho (one variable per entry) followed by formal differentiation.
inline std::map<std::string, qdg::MatQ> symbolic_gradient(const qdg::Potential& w, const qdg::RepQ& rho) {
  const qdg::Quiver& q = *w.quiver();
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> vars;
  std::map<std::string, std::size_t> offset;
  std::vector<Rational> values;
  for (const auto& e : q.edges()) {
    const qdg::MatQ& m = rho.at(e.id);
    offset[e.id] = vars.size();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        vars.push_back({e.id, {i, j}});
        values.push_back(m(i, j));
      }
  }
  std::size_t nv = vars.size();
  using SymMat = std::vector<std::vector<CommPoly>>;
  auto symbolic = [&](const std::string& id) {
    const qdg::MatQ& m = rho.at(id);
    SymMat s(m.rows(), std::vector<CommPoly>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        Monomial mono(nv, 0);
        mono[offset[id] + i * m.cols() + j] = 1;
        s[i][j][mono] = 1;
      }
    return s;
  };
  CommPoly trace;
  for (const auto& [path, coeff] : w.poly().terms()) {
    SymMat acc;
    bool first = true;
    for (int a : path.arrows) {
      SymMat next = symbolic(q.edge(a).id);
      if (first) {
        acc = next;
        first = false;
        continue;
      }
      SymMat prod(acc.size(), std::vector<CommPoly>(next.front().size()));
      for (std::size_t i = 0; i < acc.size(); ++i)
        for (std::size_t j = 0; j < next.front().size(); ++j)
          for (std::size_t k = 0; k < next.size(); ++k) {
            CommPoly t = multiply(acc[i][k], next[k][j]);
            for (const auto& [m, c] : t) add_to(prod[i][j], m, c);
          }
      acc = prod;
    }
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (const auto& [m, c] : acc[i][i]) add_to(trace, m, c * coeff);
  }
  std::map<std::string, qdg::MatQ> grad;
  for (const auto& e : q.edges()) {
    const qdg::MatQ& m = rho.at(e.id);
    qdg::MatQ g(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        g(i, j) = evaluate(differentiate(trace, offset[e.id] + i * m.cols() + j), values);
    grad[e.id] = g;
  }
  return grad;
}

}  // namespace oracle
