#include "qdg/quiver.hpp"

#include <algorithm>
#include <set>

#include "qdg/errors.hpp"

namespace qdg {

std::string star(const std::string& id) { return id + kStarMarker; }
std::string prime(const std::string& id) { return id + kPrimeMarker; }

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i].empty()) throw InputError("empty vertex id");
    if (!vindex_.emplace(vertices_[i], static_cast<int>(i)).second)
      throw InputError("duplicate vertex id '" + vertices_[i] + "'");
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id.empty()) throw InputError("empty edge id");
    if (!eindex_.emplace(e.id, static_cast<int>(i)).second)
      throw InputError("duplicate edge id '" + e.id + "'");
    auto s = vindex_.find(e.src);
    auto t = vindex_.find(e.tgt);
    if (s == vindex_.end() || t == vindex_.end())
      throw InputError("edge '" + e.id + "' has an undeclared endpoint");
    src_.push_back(s->second);
    tgt_.push_back(t->second);
  }
}

int Quiver::vertex_index(const std::string& v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end()) throw InputError("unknown vertex '" + v + "'");
  return it->second;
}

int Quiver::edge_index(const std::string& e) const {
  auto it = eindex_.find(e);
  if (it == eindex_.end()) throw InputError("unknown edge '" + e + "'");
  return it->second;
}

std::optional<int> Quiver::find_edge(const std::string& e) const {
  auto it = eindex_.find(e);
  if (it == eindex_.end()) return std::nullopt;
  return it->second;
}

bool Quiver::contains(const Quiver& sub) const {
  for (const auto& v : sub.vertices())
    if (!has_vertex(v)) return false;
  for (const auto& e : sub.edges()) {
    auto i = find_edge(e.id);
    if (!i) return false;
    const Edge& mine = edges_[*i];
    if (mine.src != e.src || mine.tgt != e.tgt) return false;
  }
  return true;
}

namespace {
void reject_markers(const Quiver& q) {
  for (const auto& e : q.edges())
    if (e.id.find(kStarMarker) != std::string::npos || e.id.find(kPrimeMarker) != std::string::npos)
      throw InputError("edge id '" + e.id + "' contains a reserved marker");
}
}  // namespace

Quiver double_quiver(const Quiver& q) {
  reject_markers(q);
  std::vector<Edge> edges = q.edges();
  for (const auto& e : q.edges()) edges.push_back(Edge{star(e.id), e.tgt, e.src, e.degree});
  return Quiver(q.vertices(), std::move(edges));
}

std::string framing_vertex(const std::string& v) { return v + "+"; }
std::string framing_edge(const std::string& v) { return "i_" + v; }

Quiver frame(const Quiver& q) {
  std::vector<std::string> vertices = q.vertices();
  std::vector<Edge> edges = q.edges();
  for (const auto& v : q.vertices()) {
    vertices.push_back(framing_vertex(v));
    edges.push_back(Edge{framing_edge(v), framing_vertex(v), v, 0});
  }
  return Quiver(std::move(vertices), std::move(edges));
}

void validate_dimension_vector(const Quiver& q, const DimensionVector& n) {
  if (n.size() != q.num_vertices())
    throw InputError("dimension vector must cover exactly the quiver's vertices");
  for (const auto& [v, d] : n) {
    if (!q.has_vertex(v)) throw InputError("dimension vector names unknown vertex '" + v + "'");
    if (d < 0) throw InputError("negative dimension at vertex '" + v + "'");
  }
}

DimensionVector uniform_dims(const Quiver& q, int n) {
  DimensionVector d;
  for (const auto& v : q.vertices()) d[v] = n;
  return d;
}

bool operator<(const Path& a, const Path& b) {
  if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.start < b.start;
}

int path_end(const Quiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.tgt(p.arrows.back());
}

bool is_cycle(const Quiver& q, const Path& p) {
  return !p.arrows.empty() && path_end(q, p) == p.start;
}

bool is_valid_path(const Quiver& q, const Path& p) {
  if (p.start < 0 || p.start >= static_cast<int>(q.num_vertices())) return false;
  int at = p.start;
  for (int a : p.arrows) {
    if (a < 0 || a >= static_cast<int>(q.num_edges()) || q.src(a) != at) return false;
    at = q.tgt(a);
  }
  return true;
}

int path_degree(const Quiver& q, const Path& p) {
  int d = 0;
  for (int a : p.arrows) d += q.degree(a);
  return d;
}

std::optional<Path> concat(const Quiver& q, const Path& a, const Path& b) {
  if (path_end(q, a) != b.start) return std::nullopt;
  Path r = a;
  r.arrows.insert(r.arrows.end(), b.arrows.begin(), b.arrows.end());
  return r;
}

std::vector<Path> paths_of_length(const Quiver& q, std::size_t k) {
  std::vector<Path> cur;
  for (std::size_t v = 0; v < q.num_vertices(); ++v) cur.push_back(Path{static_cast<int>(v), {}});
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<Path> next;
    for (const auto& p : cur) {
      int end = path_end(q, p);
      for (std::size_t e = 0; e < q.num_edges(); ++e) {
        if (q.src(static_cast<int>(e)) != end) continue;
        Path r = p;
        r.arrows.push_back(static_cast<int>(e));
        next.push_back(std::move(r));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_len) {
  std::vector<Path> all;
  for (std::size_t k = 0; k <= max_len; ++k) {
    auto ps = paths_of_length(q, k);
    all.insert(all.end(), ps.begin(), ps.end());
  }
  return all;
}

std::vector<Path> cycles_up_to(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out;
  for (std::size_t k = 1; k <= max_len; ++k)
    for (auto& p : paths_of_length(q, k))
      if (is_cycle(q, p)) out.push_back(std::move(p));
  return out;
}

std::vector<std::string> edge_ids(const Quiver& q, const Path& p) {
  std::vector<std::string> ids;
  for (int a : p.arrows) ids.push_back(q.edge(a).id);
  return ids;
}

Necklace canonical_necklace(const Quiver& q, const Path& cycle) {
  if (cycle.arrows.empty()) return Necklace{{}, q.vertices()[cycle.start]};
  if (!is_cycle(q, cycle)) throw InputError("necklace of a non-cycle");
  auto word = edge_ids(q, cycle);
  auto best = word;
  for (std::size_t r = 1; r < word.size(); ++r) {
    std::rotate(word.begin(), word.begin() + 1, word.end());
    if (word < best) best = word;
  }
  return Necklace{best, ""};
}

std::vector<Necklace> necklace_basis(const Quiver& q, std::size_t max_len) {
  std::set<Necklace> seen;
  std::vector<Necklace> out;
  for (std::size_t v = 0; v < q.num_vertices(); ++v)
    out.push_back(Necklace{{}, q.vertices()[v]});
  for (const auto& c : cycles_up_to(q, max_len)) {
    Necklace n = canonical_necklace(q, c);
    if (seen.insert(n).second) out.push_back(std::move(n));
  }
  return out;
}

std::string to_string(const Necklace& n) {
  if (n.word.empty()) return "e_" + n.vertex;
  std::string s;
  for (std::size_t i = 0; i < n.word.size(); ++i) s += (i ? "." : "") + n.word[i];
  return s;
}

}  // namespace qdg
