#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdg {

inline constexpr char kStarMarker = '*';
inline constexpr char kPrimeMarker = '\'';

std::string star(const std::string& id);
std::string prime(const std::string& id);

// An arrow; `degree` is the cohomological degree when the quiver carries a grading.
struct Edge {
  std::string id;
  std::string src;
  std::string tgt;
  int degree = 0;

  bool operator==(const Edge&) const = default;
};

class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool has_vertex(const std::string& v) const { return vindex_.count(v) != 0; }
  bool has_edge(const std::string& e) const { return eindex_.count(e) != 0; }
  int vertex_index(const std::string& v) const;
  int edge_index(const std::string& e) const;
  std::optional<int> find_edge(const std::string& e) const;

  const Edge& edge(int i) const { return edges_[i]; }
  const Edge& edge(const std::string& id) const { return edges_[edge_index(id)]; }
  int src(int i) const { return src_[i]; }
  int tgt(int i) const { return tgt_[i]; }
  int degree(int i) const { return edges_[i].degree; }

  // Vertex and edge containment with matching endpoints (degrees ignored).
  bool contains(const Quiver& sub) const;

  bool operator==(const Quiver& o) const {
    return vertices_ == o.vertices_ && edges_ == o.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vindex_;
  std::unordered_map<std::string, int> eindex_;
  std::vector<int> src_;
  std::vector<int> tgt_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline QuiverPtr make_quiver(Quiver q) { return std::make_shared<const Quiver>(std::move(q)); }

// Q plus a reversed arrow e* for every arrow e.
Quiver double_quiver(const Quiver& q);

// Adds a vertex "v+" and an arrow "i_v": v+ -> v for every vertex v.
Quiver frame(const Quiver& q);
std::string framing_vertex(const std::string& v);
std::string framing_edge(const std::string& v);

using DimensionVector = std::map<std::string, int>;

void validate_dimension_vector(const Quiver& q, const DimensionVector& n);
DimensionVector uniform_dims(const Quiver& q, int n);

// A path: `start` vertex index followed by composable arrows read left to right.
struct Path {
  int start = 0;
  std::vector<int> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;
};

// Shorter paths first, then arrow sequence, then start vertex.
bool operator<(const Path& a, const Path& b);

int path_end(const Quiver& q, const Path& p);
bool is_cycle(const Quiver& q, const Path& p);
bool is_valid_path(const Quiver& q, const Path& p);
int path_degree(const Quiver& q, const Path& p);

// Concatenation p then q; nullopt when end(p) != start(q).
std::optional<Path> concat(const Quiver& q, const Path& a, const Path& b);

// All paths of length exactly k (k = 0 gives the idempotents).
std::vector<Path> paths_of_length(const Quiver& q, std::size_t k);
std::vector<Path> paths_up_to(const Quiver& q, std::size_t max_len);
// Cycles of length 1..max_len.
std::vector<Path> cycles_up_to(const Quiver& q, std::size_t max_len);

std::vector<std::string> edge_ids(const Quiver& q, const Path& p);

// Cyclic word of arrows, stored as its lexicographically minimal rotation.
// Length-0 necklaces carry the vertex id instead.
struct Necklace {
  std::vector<std::string> word;
  std::string vertex;

  bool operator==(const Necklace&) const = default;
  auto operator<=>(const Necklace&) const = default;
};

Necklace canonical_necklace(const Quiver& q, const Path& cycle);
std::vector<Necklace> necklace_basis(const Quiver& q, std::size_t max_len);
std::string to_string(const Necklace& n);

}  // namespace qdg
