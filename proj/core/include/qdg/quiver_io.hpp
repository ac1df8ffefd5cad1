#pragma once

#include <optional>
#include <string>

#include "qdg/ncpoly.hpp"
#include "qdg/quiver.hpp"

namespace qdg {

struct QuiverDocument {
  QuiverPtr quiver;
  std::optional<Potential> potential;
};

// { "vertices": [...], "edges": [{"id","src","tgt"[,"degree"]}],
//   "potential": [{"coeff": "p/q", "cycle": [edge ids]}] }
QuiverDocument parse_quiver_document(const std::string& json_text);
QuiverDocument load_quiver_file(const std::string& path);

std::string quiver_document_json(const Quiver& q, const Potential* w = nullptr);

}  // namespace qdg
