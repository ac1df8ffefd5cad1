#include "qdg/dg.hpp"

#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>

#include "qdg/errors.hpp"

namespace qdg {

using nlohmann::json;

std::string loop_generator(const std::string& v) { return "x_" + v; }
std::string double_loop_generator(const std::string& v) { return "x'_" + v; }

DgPresentation::DgPresentation(std::string name, QuiverPtr graded,
                               std::map<std::string, NCPolynomial> diff,
                               std::map<std::string, int> display_sign)
    : name_(std::move(name)), q_(std::move(graded)), display_sign_(std::move(display_sign)) {
  for (const auto& e : q_->edges())
    if (e.degree > 0) throw InputError("generator '" + e.id + "' has positive degree");
  for (auto& [id, poly] : diff) {
    int g = q_->edge_index(id);
    NCPolynomial local = transport(poly, q_);
    if (local.is_zero()) continue;
    const Edge& e = q_->edge(g);
    if (e.degree == 0) throw InputError("degree-0 generator '" + id + "' has a nonzero differential");
    auto deg = local.degree();
    if (!deg || *deg != e.degree + 1)
      throw InputError("d(" + id + ") is not homogeneous of degree " +
                       std::to_string(e.degree + 1));
    for (const auto& [p, c] : local.terms())
      if (p.start != q_->src(g) || path_end(*q_, p) != q_->tgt(g))
        throw InputError("d(" + id + ") has a term with the wrong endpoints");
    diff_.emplace(id, std::move(local));
  }
  for (const auto& [id, s] : display_sign_) {
    q_->edge_index(id);
    if (s != 1 && s != -1) throw InputError("display sign must be +1 or -1");
  }
}

std::vector<std::string> DgPresentation::generators_of_degree(int degree) const {
  std::vector<std::string> out;
  for (const auto& e : q_->edges())
    if (e.degree == degree) out.push_back(e.id);
  return out;
}

NCPolynomial DgPresentation::d(const std::string& gen) const {
  q_->edge_index(gen);
  auto it = diff_.find(gen);
  return it == diff_.end() ? NCPolynomial(q_) : it->second;
}

int DgPresentation::display_sign(const std::string& gen) const {
  auto it = display_sign_.find(gen);
  return it == display_sign_.end() ? 1 : it->second;
}

DgPresentation DgPresentation::with_differential(const std::string& gen, NCPolynomial value) const {
  auto diff = diff_;
  diff.insert_or_assign(gen, std::move(value));
  return DgPresentation(name_, q_, std::move(diff), display_sign_);
}

namespace {

// Assembles the graded quiver and lets the constructors write differentials by id.
struct Builder {
  std::vector<std::string> vertices;
  std::vector<Edge> gens;
  QuiverPtr q;

  void add(const std::string& id, const std::string& s, const std::string& t, int degree) {
    gens.push_back(Edge{id, s, t, degree});
  }
  void finish() { q = make_quiver(Quiver(vertices, gens)); }
  NCPolynomial g(const std::string& id) const { return NCPolynomial::edge(q, id); }
  NCPolynomial zero() const { return NCPolynomial(q); }
  int v(const std::string& id) const { return q->vertex_index(id); }
};

void reject_reserved(const Quiver& q) {
  for (const auto& e : q.edges()) {
    if (e.id.find(kStarMarker) != std::string::npos || e.id.find(kPrimeMarker) != std::string::npos)
      throw InputError("edge id '" + e.id + "' contains a reserved marker");
    if (e.degree != 0) throw InputError("input quiver must be concentrated in degree 0");
  }
}

// Sum over `edges` of e_v (e f(e) - f(e) e) e_v, where f(e) is the partner id.
NCPolynomial moment_sum(const Builder& b, const std::vector<Edge>& edges, const std::string& vertex,
                        std::string (*partner)(const std::string&)) {
  int v = b.v(vertex);
  NCPolynomial s = b.zero();
  for (const auto& e : edges) s += bracket(b.g(e.id), b.g(partner(e.id)));
  return s.localize(v, v);
}

}  // namespace

DgPresentation path_algebra(const Quiver& q) {
  for (const auto& e : q.edges())
    if (e.degree != 0) throw InputError("path_algebra expects an ungraded quiver");
  return DgPresentation("kQ", make_quiver(q), {}, {});
}

DgPresentation ginzburg2(const Quiver& q) {
  reject_reserved(q);
  Builder b{q.vertices(), {}, nullptr};
  for (const auto& e : q.edges()) b.add(e.id, e.src, e.tgt, 0);
  for (const auto& e : q.edges()) b.add(star(e.id), e.tgt, e.src, 0);
  for (const auto& v : q.vertices()) b.add(loop_generator(v), v, v, -1);
  b.finish();
  std::map<std::string, NCPolynomial> d;
  for (const auto& v : q.vertices()) d.emplace(loop_generator(v), moment_sum(b, q.edges(), v, star));
  return DgPresentation("G2", b.q, std::move(d));
}

DgPresentation ginzburg3(const Potential& w) {
  const Quiver& q = *w.quiver();
  reject_reserved(q);
  Builder b{q.vertices(), {}, nullptr};
  for (const auto& e : q.edges()) b.add(e.id, e.src, e.tgt, 0);
  for (const auto& e : q.edges()) b.add(prime(e.id), e.tgt, e.src, -1);
  for (const auto& v : q.vertices()) b.add(double_loop_generator(v), v, v, -2);
  b.finish();
  std::map<std::string, NCPolynomial> d;
  for (const auto& e : q.edges())
    d.emplace(prime(e.id), transport(cyclic_derivative(w, e.id), b.q));
  for (const auto& v : q.vertices())
    d.emplace(double_loop_generator(v), moment_sum(b, q.edges(), v, prime));
  return DgPresentation("G3", b.q, std::move(d));
}

DgPresentation relative_ginzburg2(const Quiver& d, const Quiver& q) {
  reject_reserved(q);
  if (!q.contains(d)) throw InputError("subquiver violation: D is not contained in Q");
  Builder b{q.vertices(), {}, nullptr};
  for (const auto& e : q.edges()) b.add(e.id, e.src, e.tgt, 0);
  for (const auto& e : d.edges()) b.add(star(e.id), e.tgt, e.src, 0);
  for (const auto& v : d.vertices()) b.add(loop_generator(v), v, v, -1);
  b.finish();
  std::map<std::string, NCPolynomial> diff;
  for (const auto& v : d.vertices())
    diff.emplace(loop_generator(v), moment_sum(b, d.edges(), v, star));
  return DgPresentation("G2(D<Q)", b.q, std::move(diff));
}

DgPresentation relative_ginzburg3(const Quiver& q, const Quiver& d, const Potential& w) {
  reject_reserved(q);
  if (!q.contains(d)) throw InputError("subquiver violation: D is not contained in Q");
  if (!(*w.quiver() == q)) throw InputError("potential does not live on Q");
  Builder b{q.vertices(), {}, nullptr};
  for (const auto& e : q.edges()) b.add(e.id, e.src, e.tgt, 0);
  for (const auto& e : d.edges()) b.add(star(e.id), e.tgt, e.src, 0);
  for (const auto& e : q.edges()) b.add(prime(e.id), e.tgt, e.src, -1);
  for (const auto& v : d.vertices()) b.add(loop_generator(v), v, v, -1);
  for (const auto& v : q.vertices()) b.add(double_loop_generator(v), v, v, -2);
  b.finish();

  std::map<std::string, NCPolynomial> diff;
  std::map<std::string, int> sign;
  for (const auto& e : q.edges()) {
    NCPolynomial de = -transport(cyclic_derivative(w, e.id), b.q);
    if (d.has_edge(e.id)) de += b.g(star(e.id));
    diff.emplace(prime(e.id), std::move(de));
    sign[prime(e.id)] = -1;
  }
  for (const auto& v : d.vertices())
    diff.emplace(loop_generator(v), moment_sum(b, d.edges(), v, star));
  for (const auto& v : q.vertices()) {
    NCPolynomial dv = -moment_sum(b, q.edges(), v, prime);
    if (d.has_vertex(v)) dv += b.g(loop_generator(v));
    diff.emplace(double_loop_generator(v), std::move(dv));
  }
  return DgPresentation("G3(Q|D)", b.q, std::move(diff), std::move(sign));
}

NCPolynomial leibniz_extend(const DgPresentation& p, const NCPolynomial& x) {
  const QuiverPtr& q = p.algebra();
  NCPolynomial in = transport(x, q);
  if (!in.is_homogeneous()) throw InputError("leibniz_extend needs a homogeneous polynomial");
  std::vector<NCPolynomial> dgen;
  dgen.reserve(q->num_edges());
  for (const auto& e : q->edges()) dgen.push_back(p.d(e.id));
  NCPolynomial out(q);
  for (const auto& [path, c] : in.terms()) {
    int sign_deg = 0;
    for (std::size_t i = 0; i < path.arrows.size(); ++i) {
      int a = path.arrows[i];
      const NCPolynomial& da = dgen[a];
      if (!da.is_zero()) {
        Path left{path.start, std::vector<int>(path.arrows.begin(), path.arrows.begin() + i)};
        Path right{q->tgt(a), std::vector<int>(path.arrows.begin() + i + 1, path.arrows.end())};
        Rational coeff = (sign_deg % 2 == 0) ? c : Rational(-c);
        out += NCPolynomial::from_path(q, left, coeff) * da * NCPolynomial::from_path(q, right);
      }
      sign_deg += q->degree(a);
    }
  }
  return out;
}

DSquaredReport check_d_squared(const DgPresentation& p) {
  DSquaredReport r;
  for (const auto& e : p.generators()) {
    ++r.generators_checked;
    NCPolynomial dd = leibniz_extend(p, p.d(e.id));
    if (!dd.is_zero()) {
      r.pass = false;
      r.failures.push_back({e.id, dd});
    }
  }
  return r;
}

std::vector<NCPolynomial> h0_relations(const DgPresentation& p) {
  std::vector<NCPolynomial> out;
  for (const auto& g : p.generators_of_degree(-1)) out.push_back(p.d(g));
  return out;
}

std::map<std::string, std::string> implied_relations(const DgPresentation& p) {
  std::map<std::string, std::string> out;
  const QuiverPtr& q = p.algebra();
  for (const auto& h : p.generators_of_degree(-2)) {
    NCPolynomial dh = p.d(h);
    for (const auto& [path, c] : dh.terms()) {
      if (path.arrows.size() != 1 || q->degree(path.arrows[0]) != -1) continue;
      if (c != 1 && c != -1) continue;
      int g = path.arrows[0];
      bool elsewhere = false;
      for (const auto& [other, c2] : dh.terms()) {
        if (other == path) continue;
        for (int a : other.arrows) elsewhere = elsewhere || a == g;
      }
      if (!elsewhere && !out.count(q->edge(g).id)) out.emplace(q->edge(g).id, h);
    }
  }
  return out;
}

std::string presentation_table(const DgPresentation& p) {
  std::ostringstream os;
  std::size_t w = 9;
  for (const auto& e : p.generators()) w = std::max(w, e.id.size());
  os << "# presentation " << p.name() << "\n";
  os << std::left << std::setw(static_cast<int>(w) + 2) << "generator" << std::setw(8) << "degree"
     << std::setw(16) << "endpoints"
     << "differential\n";
  for (const auto& e : p.generators()) {
    os << std::left << std::setw(static_cast<int>(w) + 2) << e.id << std::setw(8) << e.degree
       << std::setw(16) << (e.src + " -> " + e.tgt) << p.d(e.id).to_string() << "\n";
  }
  return os.str();
}

namespace {

json poly_json(const NCPolynomial& x) {
  json terms = json::array();
  const Quiver& q = *x.quiver();
  for (const auto& [path, c] : x.terms()) {
    json t{{"coeff", c.get_str()}, {"path", edge_ids(q, path)}};
    if (path.arrows.empty()) t["vertex"] = q.vertices()[path.start];
    terms.push_back(t);
  }
  return terms;
}

NCPolynomial poly_from_json(const QuiverPtr& q, const json& j) {
  if (!j.is_array()) throw InputError("differential must be an array of terms");
  NCPolynomial out(q);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("path"))
      throw InputError("differential term needs 'coeff' and 'path'");
    Rational c = parse_rational(t.at("coeff").get<std::string>());
    auto ids = t.at("path").get<std::vector<std::string>>();
    if (ids.empty()) {
      if (!t.contains("vertex")) throw InputError("idempotent term needs 'vertex'");
      out += NCPolynomial::idempotent(q, t.at("vertex").get<std::string>()) * c;
    } else {
      out += NCPolynomial::word(q, ids, c);
    }
  }
  return out;
}

}  // namespace

std::string presentation_json(const DgPresentation& p) {
  json doc;
  doc["name"] = p.name();
  doc["vertices"] = p.algebra()->vertices();
  doc["generators"] = json::array();
  for (const auto& e : p.generators()) {
    json g{{"id", e.id}, {"src", e.src}, {"tgt", e.tgt}, {"degree", e.degree}};
    if (p.display_sign(e.id) != 1) g["display_sign"] = p.display_sign(e.id);
    doc["generators"].push_back(g);
  }
  doc["differential"] = json::object();
  for (const auto& [id, poly] : p.differential()) doc["differential"][id] = poly_json(poly);
  return doc.dump(2);
}

DgPresentation parse_presentation_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
    std::vector<Edge> gens;
    std::map<std::string, int> sign;
    for (const auto& g : doc.at("generators")) {
      gens.push_back(Edge{g.at("id").get<std::string>(), g.at("src").get<std::string>(),
                          g.at("tgt").get<std::string>(), g.at("degree").get<int>()});
      if (g.contains("display_sign")) sign[gens.back().id] = g.at("display_sign").get<int>();
    }
    auto q = make_quiver(Quiver(doc.at("vertices").get<std::vector<std::string>>(), gens));
    std::map<std::string, NCPolynomial> diff;
    for (const auto& [id, terms] : doc.at("differential").items())
      diff.emplace(id, poly_from_json(q, terms));
    return DgPresentation(doc.value("name", std::string("presentation")), q, std::move(diff),
                          std::move(sign));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed presentation document: ") + e.what());
  }
}

}  // namespace qdg
