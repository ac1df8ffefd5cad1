#include "qdg/hochschild.hpp"

#include "qdg/errors.hpp"

namespace qdg {

bool operator<(const RelKey& a, const RelKey& b) {
  if (a.path.length() != b.path.length()) return a.path.length() < b.path.length();
  if (a.gen != b.gen) return a.gen < b.gen;
  return a.path < b.path;
}

void HHChain::add_rel(const RelKey& k, const Rational& c) {
  if (qdg::is_zero(c)) return;
  auto [it, inserted] = rel.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (qdg::is_zero(it->second)) rel.erase(it);
  }
}

void HHChain::add_loop(const Path& p, const Rational& c) {
  if (qdg::is_zero(c)) return;
  auto [it, inserted] = loops.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (qdg::is_zero(it->second)) loops.erase(it);
  }
}

HHChain& HHChain::operator+=(const HHChain& o) {
  for (const auto& [k, c] : o.rel) add_rel(k, c);
  for (const auto& [p, c] : o.loops) add_loop(p, c);
  return *this;
}

SmallHHComplex::SmallHHComplex(DgPresentation p, std::size_t max_len)
    : p_(std::move(p)), L_(max_len) {
  if (L_ < 1) throw InputError("small Hochschild complex needs L >= 1");
  const Quiver& q = *p_.algebra();
  for (auto& c : paths_up_to(q, L_))
    if (path_end(q, c) == c.start) loop_basis_.push_back(c);
  auto short_paths = paths_up_to(q, L_ - 1);
  for (std::size_t g = 0; g < q.num_edges(); ++g)
    for (const auto& path : short_paths)
      if (path.start == q.tgt(static_cast<int>(g)) && path_end(q, path) == q.src(static_cast<int>(g)))
        rel_basis_.push_back(RelKey{static_cast<int>(g), path});
  for (std::size_t i = 0; i < rel_basis_.size(); ++i) rel_index_[rel_basis_[i]] = i;
  for (std::size_t i = 0; i < loop_basis_.size(); ++i) loop_index_[loop_basis_[i]] = i;
}

int SmallHHComplex::total_degree(const RelKey& r) const {
  const Quiver& q = *p_.algebra();
  return q.degree(r.gen) + path_degree(q, r.path) - 1;
}

int SmallHHComplex::total_degree(const Path& loop) const { return path_degree(*p_.algebra(), loop); }

namespace {

bool odd(int k) { return (k % 2) != 0; }

Path sub_path(const Quiver& q, const Path& p, std::size_t from, std::size_t to) {
  int start = from == 0 ? p.start : q.tgt(p.arrows[from - 1]);
  return Path{start, std::vector<int>(p.arrows.begin() + from, p.arrows.begin() + to)};
}

}  // namespace

HHChain SmallHHComplex::boundary(const RelKey& r) const {
  const Quiver& q = *p_.algebra();
  HHChain out;
  Path g{q.src(r.gen), {r.gen}};
  int dg = q.degree(r.gen), dp = path_degree(q, r.path);
  out.add_loop(*concat(q, g, r.path), 1);
  out.add_loop(*concat(q, r.path, g), odd(dg * dp) ? 1 : -1);
  return out;
}

HHChain SmallHHComplex::apply(const HHChain& x) const {
  const QuiverPtr& qp = p_.algebra();
  const Quiver& q = *qp;
  HHChain out;
  for (const auto& [r, c] : x.rel) {
    // b
    for (const auto& [l, v] : boundary(r).loops) out.add_loop(l, c * v);
    // -d_R(g (x) p)
    int gdeg = q.degree(r.gen);
    int pdeg = path_degree(q, r.path);
    const NCPolynomial dg = p_.d(q.edge(r.gen).id);
    for (const auto& [w, cw] : dg.terms()) {
      std::size_t k = w.arrows.size();
      int prefix_deg = 0;
      for (std::size_t i = 0; i < k; ++i) {
        int wi = w.arrows[i];
        Path a = sub_path(q, w, 0, i);
        Path b = sub_path(q, w, i + 1, k);
        int bdeg = path_degree(q, b);
        Path rest = *concat(q, *concat(q, b, r.path), a);
        bool neg = odd(prefix_deg * (q.degree(wi) + bdeg + pdeg));
        out.add_rel(RelKey{wi, rest}, neg ? Rational(c * cw) : Rational(-c * cw));
        prefix_deg += q.degree(wi);
      }
    }
    NCPolynomial dp = leibniz_extend(p_, NCPolynomial::from_path(qp, r.path));
    for (const auto& [t, ct] : dp.terms())
      out.add_rel(RelKey{r.gen, t}, odd(gdeg) ? Rational(c * ct) : Rational(-c * ct));
  }
  for (const auto& [l, c] : x.loops) {
    NCPolynomial dl = leibniz_extend(p_, NCPolynomial::from_path(qp, l));
    for (const auto& [t, ct] : dl.terms()) out.add_loop(t, c * ct);
  }
  return out;
}

bool SmallHHComplex::window_contains(const HHChain& x) const {
  for (const auto& [r, c] : x.rel)
    if (!rel_index_.count(r)) return false;
  for (const auto& [l, c] : x.loops)
    if (!loop_index_.count(l)) return false;
  return true;
}

SmallHHComplex::WindowMatrix SmallHHComplex::total_matrix() const {
  std::size_t nr = rel_basis_.size(), nl = loop_basis_.size();
  WindowMatrix w{MatQ(nr + nl, nr + nl), std::vector<bool>(nr + nl, true)};
  auto fill = [&](std::size_t col, const HHChain& img) {
    for (const auto& [r, c] : img.rel) {
      auto it = rel_index_.find(r);
      if (it == rel_index_.end())
        w.in_window[col] = false;
      else
        w.matrix(it->second, col) = c;
    }
    for (const auto& [l, c] : img.loops) {
      auto it = loop_index_.find(l);
      if (it == loop_index_.end())
        w.in_window[col] = false;
      else
        w.matrix(nr + it->second, col) = c;
    }
  };
  for (std::size_t i = 0; i < nr; ++i) {
    HHChain e;
    e.add_rel(rel_basis_[i], 1);
    fill(i, apply(e));
  }
  for (std::size_t i = 0; i < nl; ++i) {
    HHChain e;
    e.add_loop(loop_basis_[i], 1);
    fill(nr + i, apply(e));
  }
  return w;
}

bool SmallHHComplex::d_squared_zero() const {
  for (const auto& r : rel_basis_) {
    HHChain e;
    e.add_rel(r, 1);
    if (!apply(apply(e)).is_zero()) return false;
  }
  for (const auto& l : loop_basis_) {
    HHChain e;
    e.add_loop(l, 1);
    if (!apply(apply(e)).is_zero()) return false;
  }
  return true;
}

std::size_t hh0_dimension(const Quiver& q, std::size_t max_len) {
  std::size_t cycles = 0;
  std::map<Path, std::size_t> index;
  for (auto& c : paths_up_to(q, max_len))
    if (path_end(q, c) == c.start) index.emplace(c, cycles++);
  if (max_len == 0) return cycles;
  // b(g (x) p) = gp - pg for arrows g and paths p with |p| <= L - 1.
  std::vector<std::pair<Path, Path>> cols;
  for (const auto& p : paths_up_to(q, max_len - 1))
    for (std::size_t g = 0; g < q.num_edges(); ++g) {
      int gi = static_cast<int>(g);
      if (p.start != q.tgt(gi) || path_end(q, p) != q.src(gi)) continue;
      Path gp{q.src(gi), {gi}};
      cols.emplace_back(*concat(q, gp, p), *concat(q, p, gp));
    }
  MatQ b(cycles, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    b(index.at(cols[j].first), j) += 1;
    b(index.at(cols[j].second), j) -= 1;
  }
  return cycles - rank(b);
}

HHChain cy_class(const DgPresentation& g2, bool with_edge_part, bool with_loop_part) {
  const Quiver& q = *g2.algebra();
  HHChain w;
  if (with_edge_part) {
    for (const auto& e : q.edges()) {
      if (e.degree != 0 || e.id.back() == kStarMarker) continue;
      auto partner = q.find_edge(star(e.id));
      if (!partner) continue;
      int ei = q.edge_index(e.id);
      w.add_rel(RelKey{ei, Path{q.tgt(ei), {*partner}}}, 1);
    }
  }
  if (with_loop_part) {
    for (const auto& v : q.vertices()) {
      int x = q.edge_index(loop_generator(v));
      w.add_loop(Path{q.src(x), {x}}, -1);
    }
  }
  return w;
}

CyCheck check_cy_class(const Quiver& q, bool with_edge_part, bool with_loop_part,
                       std::size_t max_len) {
  SmallHHComplex c(ginzburg2(q), max_len);
  HHChain w = cy_class(c.presentation(), with_edge_part, with_loop_part);
  CyCheck out;
  out.residual = c.apply(w);
  out.in_window = c.window_contains(w) && c.window_contains(out.residual);
  out.cocycle = out.residual.is_zero();
  return out;
}

bool verify_cy_cocycle(const Quiver& q) {
  CyCheck c = check_cy_class(q, true, true, 3);
  return c.in_window && c.cocycle;
}

}  // namespace qdg
