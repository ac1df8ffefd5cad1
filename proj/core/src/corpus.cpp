#include "qdg/corpus.hpp"

#include <algorithm>
#include <set>

#include "qdg/errors.hpp"

namespace qdg {

namespace {

Quiver loops(const std::vector<std::string>& ids) {
  std::vector<Edge> edges;
  for (const auto& id : ids) edges.push_back(Edge{id, "0", "0", 0});
  return Quiver({"0"}, edges);
}

Quiver a2tilde() {
  return Quiver({"0", "1", "2"},
                {Edge{"a", "0", "1", 0}, Edge{"b", "1", "2", 0}, Edge{"c", "2", "0", 0}});
}

}  // namespace

QuiverPtr builtin_quiver(const std::string& name) {
  if (name == "s1") return make_quiver(loops({"a"}));
  if (name == "s2") return make_quiver(loops({"x", "y"}));
  if (name == "s3") return make_quiver(loops({"x", "y", "z"}));
  if (name == "s3abc") return make_quiver(loops({"a", "b", "c"}));
  if (name == "a2tilde") return make_quiver(a2tilde());
  if (name == "a2") return make_quiver(Quiver({"0", "1"}, {Edge{"a", "0", "1", 0}}));
  if (name == "s1+") return make_quiver(frame(loops({"a"})));
  if (name == "s3+") return make_quiver(frame(loops({"x", "y", "z"})));
  throw InputError("unknown builtin quiver '" + name + "'");
}

std::vector<std::string> builtin_quiver_names() {
  return {"s1", "s2", "s3", "s3abc", "a2tilde", "a2", "s1+", "s3+"};
}

Potential named_potential(QuiverPtr q, const std::string& spec) {
  if (spec == "0" || spec.empty()) return Potential::zero(q);
  if (spec == "xyz-commutator") return Potential(parse_polynomial(q, "xyz - yxz"));
  if (spec == "abc-commutator") return Potential(parse_polynomial(q, "abc - bac"));
  return Potential(parse_polynomial(q, spec));
}

Quiver edge_subquiver(const Quiver& q, const std::vector<std::string>& edges, bool all_vertices) {
  std::vector<Edge> es;
  std::set<std::string> used;
  for (const auto& id : edges) {
    const Edge& e = q.edge(id);
    es.push_back(e);
    used.insert(e.src);
    used.insert(e.tgt);
  }
  std::vector<std::string> vs;
  for (const auto& v : q.vertices())
    if (all_vertices || used.count(v)) vs.push_back(v);
  return Quiver(vs, es);
}

Quiver empty_subquiver(const Quiver& q, EmptySubquiver reading) {
  return edge_subquiver(q, {}, reading == EmptySubquiver::AllVertices);
}

RelativeCase builtin_relative(const std::string& name) {
  if (name == "a2-in-a2tilde") {
    auto q = builtin_quiver("a2tilde");
    auto d = make_quiver(edge_subquiver(*q, {"a"}, false));
    return {name, q, d, named_potential(q, "abc")};
  }
  if (name == "s1-in-s3") {
    auto q = builtin_quiver("s3abc");
    auto d = make_quiver(edge_subquiver(*q, {"a"}, false));
    return {name, q, d, named_potential(q, "abc-commutator")};
  }
  if (name == "s1x-in-s3") {
    auto q = builtin_quiver("s3");
    auto d = make_quiver(edge_subquiver(*q, {"x"}, false));
    return {name, q, d, named_potential(q, "xyz-commutator")};
  }
  if (name == "s1+-in-s3+") {
    auto q = builtin_quiver("s3+");
    auto d = make_quiver(edge_subquiver(*q, {"x", framing_edge("0")}, false));
    return {name, q, d, named_potential(q, "xyz-commutator")};
  }
  throw InputError("unknown builtin inclusion '" + name + "'");
}

std::vector<std::string> builtin_relative_names() {
  return {"a2-in-a2tilde", "s1-in-s3", "s1x-in-s3", "s1+-in-s3+"};
}

std::vector<CorpusQuiver> quiver_corpus() {
  return {
      {"s1", builtin_quiver("s1"), {"0"}},
      {"s2", builtin_quiver("s2"), {"0"}},
      {"s3", builtin_quiver("s3"), {"0", "xyz-commutator"}},
      {"s3abc", builtin_quiver("s3abc"), {"0", "abc", "abc-commutator"}},
      {"a2tilde", builtin_quiver("a2tilde"), {"0", "abc"}},
      {"a2", builtin_quiver("a2"), {"0"}},
      {"s1+", builtin_quiver("s1+"), {"0"}},
      {"s3+", builtin_quiver("s3+"), {"0", "xyz-commutator"}},
  };
}

}  // namespace qdg
