#include "qdg/quiver_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qdg/errors.hpp"

namespace qdg {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw InputError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

QuiverDocument parse_quiver_document(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed quiver document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("quiver document must be an object");
  std::vector<std::string> vertices;
  const json& vs = require(doc, "vertices");
  if (!vs.is_array()) throw InputError("'vertices' must be an array");
  for (const auto& v : vs) {
    if (v.is_string())
      vertices.push_back(v.get<std::string>());
    else if (v.is_number_integer())
      vertices.push_back(std::to_string(v.get<long long>()));
    else
      throw InputError("vertex ids must be strings or integers");
  }
  std::vector<Edge> edges;
  const json& es = require(doc, "edges");
  if (!es.is_array()) throw InputError("'edges' must be an array");
  auto vertex_field = [](const json& e, const char* key) {
    const json& v = require(e, key);
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (!v.is_string()) throw InputError(std::string("edge field '") + key + "' must be a vertex id");
    return v.get<std::string>();
  };
  for (const auto& e : es) {
    Edge edge{require_string(e, "id"), vertex_field(e, "src"), vertex_field(e, "tgt"), 0};
    if (e.contains("degree")) {
      if (!e.at("degree").is_number_integer()) throw InputError("edge degree must be an integer");
      edge.degree = e.at("degree").get<int>();
    }
    edges.push_back(std::move(edge));
  }
  QuiverDocument out{make_quiver(Quiver(std::move(vertices), std::move(edges))), std::nullopt};
  if (doc.contains("potential")) {
    const json& ps = doc.at("potential");
    if (!ps.is_array()) throw InputError("'potential' must be an array");
    NCPolynomial w(out.quiver);
    for (const auto& t : ps) {
      Rational c = 1;
      if (t.contains("coeff")) {
        const json& cj = t.at("coeff");
        if (cj.is_string())
          c = parse_rational(cj.get<std::string>());
        else if (cj.is_number_integer())
          c = Rational(cj.get<long>());
        else
          throw InputError("'coeff' must be a rational string or an integer");
      }
      const json& cyc = require(t, "cycle");
      if (!cyc.is_array() || cyc.empty()) throw InputError("'cycle' must be a non-empty array");
      std::vector<std::string> ids;
      for (const auto& id : cyc) {
        if (!id.is_string()) throw InputError("cycle entries must be edge ids");
        ids.push_back(id.get<std::string>());
      }
      w += NCPolynomial::word(out.quiver, ids, c);
    }
    out.potential = Potential(std::move(w));
  }
  return out;
}

QuiverDocument load_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open quiver file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_quiver_document(ss.str());
}

std::string quiver_document_json(const Quiver& q, const Potential* w) {
  json doc;
  doc["vertices"] = q.vertices();
  doc["edges"] = json::array();
  for (const auto& e : q.edges()) {
    json je{{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}};
    if (e.degree != 0) je["degree"] = e.degree;
    doc["edges"].push_back(je);
  }
  if (w) {
    doc["potential"] = json::array();
    for (const auto& [p, c] : w->poly().terms())
      doc["potential"].push_back({{"coeff", c.get_str()}, {"cycle", edge_ids(q, p)}});
  }
  return doc.dump(2);
}

}  // namespace qdg
