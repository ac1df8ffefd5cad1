#pragma once

#include <string>
#include <vector>

#include "qdg/ncpoly.hpp"
#include "qdg/quiver.hpp"

namespace qdg {

// Named test quivers: s1 (loop a), s2 (loops x,y), s3 (loops x,y,z), s3abc,
// a2tilde (0->1->2->0 via a,b,c), a2 (0->1 via a), s1+ and s3+ (framed).
QuiverPtr builtin_quiver(const std::string& name);
std::vector<std::string> builtin_quiver_names();

// "0", "abc", "xyz-commutator" ([x,y]z), "abc-commutator" ([a,b]c), or polynomial text.
Potential named_potential(QuiverPtr q, const std::string& spec);

// An inclusion D in Q with a potential on Q.
struct RelativeCase {
  std::string name;
  QuiverPtr q;
  QuiverPtr d;
  Potential w;
};

// a2-in-a2tilde (W = abc), s1-in-s3 (loops a,b,c; W = [a,b]c),
// s1x-in-s3 (loops x,y,z; W = [x,y]z), s1+-in-s3+ (framed, W = [x,y]z).
RelativeCase builtin_relative(const std::string& name);
std::vector<std::string> builtin_relative_names();

// Subquiver with the given edges; vertices are either the edge endpoints or all of Q.
Quiver edge_subquiver(const Quiver& q, const std::vector<std::string>& edges,
                      bool all_vertices);

enum class EmptySubquiver { NoVertices, AllVertices };
Quiver empty_subquiver(const Quiver& q, EmptySubquiver reading);

struct CorpusQuiver {
  std::string name;
  QuiverPtr q;
  std::vector<std::string> potentials;
};

// Quivers used by the corpus-wide checks, each with the potentials that make sense on it.
std::vector<CorpusQuiver> quiver_corpus();

}  // namespace qdg
