#pragma once

#include <map>
#include <vector>

#include "qdg/dg.hpp"
#include "qdg/exact_linalg.hpp"
#include "qdg/repvar.hpp"

namespace qdg {

// Generator-tensor-path element g (x) p of the relations term; p runs from t(g) to s(g).
struct RelKey {
  int gen = 0;
  Path path;

  bool operator==(const RelKey&) const = default;
};
bool operator<(const RelKey& a, const RelKey& b);

// Element of the cone: relations component and loops component.
struct HHChain {
  std::map<RelKey, Rational> rel;
  std::map<Path, Rational> loops;

  bool is_zero() const { return rel.empty() && loops.empty(); }
  void add_rel(const RelKey& k, const Rational& c);
  void add_loop(const Path& p, const Rational& c);
  HHChain& operator+=(const HHChain& o);
};

// Cone of b(g (x) p) = gp - (-1)^{|g||p|} pg over the free graded quiver algebra of a
// presentation. The total differential is D(r, l) = (-d_R r, b r + d_L l); relation
// elements sit in total degree |g| + |p| - 1.
class SmallHHComplex {
 public:
  SmallHHComplex(DgPresentation p, std::size_t max_len);

  const DgPresentation& presentation() const { return p_; }
  std::size_t max_len() const { return L_; }
  const std::vector<RelKey>& relation_basis() const { return rel_basis_; }
  const std::vector<Path>& loop_basis() const { return loop_basis_; }

  // Exact and unbounded: images may be longer than the window.
  HHChain apply(const HHChain& x) const;
  HHChain boundary(const RelKey& r) const;

  int total_degree(const RelKey& r) const;
  int total_degree(const Path& loop) const;

  // D on the window basis (relations first, then loops). Columns whose image
  // leaves the window are flagged false in `in_window`.
  struct WindowMatrix {
    MatQ matrix;
    std::vector<bool> in_window;
  };
  WindowMatrix total_matrix() const;

  // D(D(v)) = 0 for every window basis vector (exact, computed without truncation).
  bool d_squared_zero() const;
  bool window_contains(const HHChain& x) const;

 private:
  DgPresentation p_;
  std::size_t L_;
  std::vector<RelKey> rel_basis_;
  std::vector<Path> loop_basis_;
  std::map<RelKey, std::size_t> rel_index_;
  std::map<Path, std::size_t> loop_index_;
};

// Cycles of length <= L minus the rank of b; equals the necklace count.
std::size_t hh0_dimension(const Quiver& q, std::size_t max_len);

// sum_e e (x) e*  and  -sum_v x_v in the small complex of ginzburg2(Q).
HHChain cy_class(const DgPresentation& g2, bool with_edge_part = true, bool with_loop_part = true);

struct CyCheck {
  bool cocycle = false;
  bool in_window = false;
  HHChain residual;
};

CyCheck check_cy_class(const Quiver& q, bool with_edge_part, bool with_loop_part,
                       std::size_t max_len = 3);
bool verify_cy_cocycle(const Quiver& q);

template <class T>
T chern0(const Potential& w, const MatrixRep<T>& rho) {
  return trace_of_potential(w, rho);
}

}  // namespace qdg
