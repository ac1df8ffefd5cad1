#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "qdg/commvar.hpp"
#include "qdg/corpus.hpp"
#include "qdg/dg.hpp"
#include "qdg/errors.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/hochschild.hpp"
#include "qdg/partition.hpp"
#include "qdg/quiver_io.hpp"
#include "qdg/repvar.hpp"

namespace qdg::cli {

namespace {

struct Globals {
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string field = "rational";
  std::string out;
  std::string format = "csv";
};

struct Opts {
  std::string quiver = "s1";
  std::string potential;
  std::string kind;
  std::string rel;
  std::string sub;
  std::string empty_d = "all";
  bool corpus = false;
  bool json = false;
  bool print = false;
  bool implied = false;
  bool two_eigenvalue = false;
  int n = 0;
  int max_n = 0;
  int max_len = 0;
  int points = 5;
  int samples = 10;
  int count = 50;
  int trials = 0;
  std::string mu, nested, lambda, spec, eps = "1/3", x, xs, v;
};

std::string fmt(double d) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << d;
  return os.str();
}

std::string yes(bool b) { return b ? "true" : "false"; }

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(const std::string& format) const {
    std::ostringstream os;
    if (format == "txt") {
      std::vector<std::size_t> w(header_.size(), 0);
      auto widen = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
      };
      widen(header_);
      for (const auto& r : rows_) widen(r);
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          os << r[i];
          if (i + 1 < r.size()) os << std::string(w[i] - r[i].size() + 2, ' ');
        }
        os << "\n";
      };
      line(header_);
      for (const auto& r : rows_) line(r);
    } else {
      auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
        os << "\n";
      };
      line(header_);
      for (const auto& r : rows_) line(r);
    }
    return os.str();
  }

 private:
  static std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct Run {
  Globals g;
  Opts o;
  std::ostringstream body;
  bool failed = false;

  void check(bool ok) {
    if (!ok) failed = true;
  }
  void emit(const Table& t) { body << t.render(g.format); }
};

// ---- input helpers ----

QuiverDocument load_quiver(const std::string& name) {
  if (std::filesystem::exists(name)) return load_quiver_file(name);
  return QuiverDocument{builtin_quiver(name), std::nullopt};
}

Potential resolve_potential(const QuiverDocument& doc, const std::string& spec) {
  if (!spec.empty()) return named_potential(doc.quiver, spec);
  if (doc.potential) return *doc.potential;
  return Potential::zero(doc.quiver);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "1,2;3,4" (rows separated by ';'); a single row is read as a column vector when as_column.
MatQ parse_matrix(const std::string& text, bool as_column = false) {
  if (text.empty()) throw InputError("missing matrix argument");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : split(text, ';')) {
    std::vector<Rational> row;
    for (const auto& c : split(r, ',')) row.push_back(parse_rational(c));
    rows.push_back(row);
  }
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) throw InputError("ragged matrix '" + text + "'");
  MatQ m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  if (as_column && m.rows() == 1) m = m.transpose();
  return m;
}

Quiver select_subquiver(const Quiver& q, const Opts& o) {
  if (o.sub.empty()) return q;
  if (o.sub == "none") {
    if (o.empty_d != "all" && o.empty_d != "none") throw InputError("--empty-d must be 'all' or 'none'");
    return empty_subquiver(q, o.empty_d == "all" ? EmptySubquiver::AllVertices : EmptySubquiver::NoVertices);
  }
  return edge_subquiver(q, split(o.sub, ','), true);
}

DgPresentation build_presentation(const Opts& o) {
  if (!o.rel.empty()) {
    RelativeCase c = builtin_relative(o.rel);
    Potential w = o.potential.empty() ? c.w : named_potential(c.q, o.potential);
    std::string kind = o.kind.empty() ? "rel3" : o.kind;
    if (kind == "rel3") return relative_ginzburg3(*c.q, *c.d, w);
    if (kind == "rel2") return relative_ginzburg2(*c.d, *c.q);
    throw InputError("--rel only combines with --kind rel2 or rel3");
  }
  QuiverDocument doc = load_quiver(o.quiver);
  const Quiver& q = *doc.quiver;
  std::string kind = o.kind;
  if (kind.empty()) kind = o.potential.empty() && !doc.potential ? "g2" : "g3";
  if (kind == "kq") return path_algebra(q);
  if (kind == "g2") return ginzburg2(q);
  if (kind == "g3") return ginzburg3(resolve_potential(doc, o.potential));
  if (kind == "rel2") return relative_ginzburg2(select_subquiver(q, o), q);
  if (kind == "rel3") return relative_ginzburg3(q, select_subquiver(q, o), resolve_potential(doc, o.potential));
  throw InputError("unknown --kind '" + kind + "' (kq, g2, g3, rel2, rel3)");
}

std::vector<Partition> partitions_upto(const Opts& o, int default_max) {
  std::vector<Partition> out;
  if (!o.mu.empty()) return {parse_partition(o.mu)};
  int lo = o.n > 0 ? o.n : 1;
  int hi = o.n > 0 ? o.n : (o.max_n > 0 ? o.max_n : default_max);
  for (int n = lo; n <= hi; ++n)
    for (auto& p : partitions(n)) out.push_back(p);
  return out;
}

// ---- dg ----

void dg_build(Run& r) {
  DgPresentation p = build_presentation(r.o);
  r.body << (r.o.json ? presentation_json(p) + "\n" : presentation_table(p));
}

std::vector<std::pair<std::string, std::function<DgPresentation()>>> dg_corpus() {
  std::vector<std::pair<std::string, std::function<DgPresentation()>>> out;
  for (const auto& cq : quiver_corpus()) {
    QuiverPtr q = cq.q;
    out.emplace_back("g2(" + cq.name + ")", [q] { return ginzburg2(*q); });
    out.emplace_back("rel2(" + cq.name + " in " + cq.name + ")", [q] { return relative_ginzburg2(*q, *q); });
    out.emplace_back("rel2(empty-all in " + cq.name + ")", [q] {
      return relative_ginzburg2(empty_subquiver(*q, EmptySubquiver::AllVertices), *q);
    });
    out.emplace_back("rel2(empty-none in " + cq.name + ")", [q] {
      return relative_ginzburg2(empty_subquiver(*q, EmptySubquiver::NoVertices), *q);
    });
    for (const auto& wname : cq.potentials) {
      std::string tag = cq.name + "," + wname;
      out.emplace_back("g3(" + tag + ")", [q, wname] { return ginzburg3(named_potential(q, wname)); });
      out.emplace_back("rel3(" + tag + ",D=Q)", [q, wname] {
        return relative_ginzburg3(*q, *q, named_potential(q, wname));
      });
      out.emplace_back("rel3(" + tag + ",D=empty-all)", [q, wname] {
        return relative_ginzburg3(*q, empty_subquiver(*q, EmptySubquiver::AllVertices), named_potential(q, wname));
      });
      out.emplace_back("rel3(" + tag + ",D=empty-none)", [q, wname] {
        return relative_ginzburg3(*q, empty_subquiver(*q, EmptySubquiver::NoVertices), named_potential(q, wname));
      });
    }
  }
  for (const auto& name : builtin_relative_names()) {
    out.emplace_back("rel2(" + name + ")", [name] {
      RelativeCase c = builtin_relative(name);
      return relative_ginzburg2(*c.d, *c.q);
    });
    out.emplace_back("rel3(" + name + ")", [name] {
      RelativeCase c = builtin_relative(name);
      return relative_ginzburg3(*c.q, *c.d, c.w);
    });
    out.emplace_back("rel3(" + name + ",W=0)", [name] {
      RelativeCase c = builtin_relative(name);
      return relative_ginzburg3(*c.q, *c.d, Potential::zero(c.q));
    });
  }
  return out;
}

void dg_check(Run& r) {
  Table t({"presentation", "generators", "d_squared", "failing"});
  auto row = [&](const std::string& name, const DgPresentation& p) {
    DSquaredReport rep = check_d_squared(p);
    std::string failing;
    for (const auto& f : rep.failures) failing += (failing.empty() ? "" : " ") + f.generator;
    t.add({name, std::to_string(rep.generators_checked), rep.pass ? "pass" : "fail", failing});
    r.check(rep.pass);
  };
  if (r.o.corpus) {
    for (const auto& [name, make] : dg_corpus()) row(name, make());
  } else {
    DgPresentation p = build_presentation(r.o);
    row(p.name(), p);
  }
  r.emit(t);
}

void dg_h0(Run& r) {
  if (!r.o.corpus) {
    DgPresentation p = build_presentation(r.o);
    Table t({"generator", "relation"});
    auto gens = p.generators_of_degree(-1);
    auto rels = h0_relations(p);
    for (std::size_t i = 0; i < gens.size(); ++i) t.add({gens[i], rels[i].to_string()});
    r.emit(t);
    return;
  }
  Table t({"quiver", "vertex", "relation", "matches_preprojective"});
  for (const auto& cq : quiver_corpus()) {
    DgPresentation p = ginzburg2(*cq.q);
    const QuiverPtr& a = p.algebra();
    auto gens = p.generators_of_degree(-1);
    auto rels = h0_relations(p);
    for (const auto& v : cq.q->vertices()) {
      NCPolynomial expected(a);
      NCPolynomial ev = NCPolynomial::idempotent(a, v);
      for (const auto& e : cq.q->edges()) {
        NCPolynomial x = NCPolynomial::edge(a, e.id), xs = NCPolynomial::edge(a, star(e.id));
        expected += ev * (x * xs - xs * x) * ev;
      }
      auto it = std::find(gens.begin(), gens.end(), loop_generator(v));
      bool ok = it != gens.end() && rels[static_cast<std::size_t>(it - gens.begin())] == expected;
      t.add({cq.name, v, it == gens.end() ? "" : rels[static_cast<std::size_t>(it - gens.begin())].to_string(),
             yes(ok)});
      r.check(ok);
    }
  }
  r.emit(t);
}

std::string normalize_equation(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::set<std::string> displayed_equations(const DgPresentation& p) {
  PolySystem s = truncation_equations(p, uniform_dims(*p.algebra(), 1));
  std::set<std::string> out;
  for (const auto& eq : s.equations)
    if (!eq.implied_by) out.insert(normalize_equation(format_equation(eq)));
  return out;
}

void dg_trunc(Run& r) {
  if (r.o.corpus) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"a2-in-a2tilde", {"x_bx_c = x_{a*}", "x_cx_a = 0", "x_ax_b = 0"}},
        {"s1-in-s3", {"[x_b,x_c] = x_{a*}", "[x_c,x_a] = 0", "[x_a,x_b] = 0"}},
    };
    Table t({"case", "equations", "expected", "match"});
    for (const auto& [name, eqs] : cases) {
      RelativeCase c = builtin_relative(name);
      auto got = displayed_equations(relative_ginzburg3(*c.q, *c.d, c.w));
      std::set<std::string> want;
      for (const auto& e : eqs) want.insert(normalize_equation(e));
      auto join = [](const std::set<std::string>& s) {
        std::string j;
        for (const auto& e : s) j += (j.empty() ? "" : "; ") + e;
        return j;
      };
      t.add({name, join(got), join(want), yes(got == want)});
      r.check(got == want);
    }
    r.emit(t);
    return;
  }
  DgPresentation p = build_presentation(r.o);
  PolySystem s = truncation_equations(p, uniform_dims(*p.algebra(), std::max(1, r.o.n)));
  if (r.o.print) {
    r.body << format_system(s, r.o.implied);
    return;
  }
  Table t({"generator", "equation", "implied_by"});
  for (const auto& eq : s.equations)
    if (r.o.implied || !eq.implied_by) t.add({eq.generator, format_equation(eq), eq.implied_by.value_or("")});
  r.emit(t);
}

void dg_cyclic(Run& r) {
  Table t({"quiver", "potentials", "max_len", "identity_holds"});
  std::mt19937_64 rng(r.g.seed);
  int max_len = r.o.max_len > 0 ? r.o.max_len : 5;
  auto run_one = [&](const std::string& name, QuiverPtr q) {
    int ok = 0;
    for (int k = 0; k < r.o.count; ++k) {
      Potential w = random_potential(q, static_cast<std::size_t>(max_len), 1 + rng() % 4, rng);
      if (sum_commutator_identity_check(w)) ++ok;
    }
    t.add({name, std::to_string(r.o.count), std::to_string(max_len),
           std::to_string(ok) + "/" + std::to_string(r.o.count)});
    r.check(ok == r.o.count);
  };
  if (r.o.corpus) {
    for (const auto& cq : quiver_corpus()) run_one(cq.name, cq.q);
  } else {
    QuiverDocument doc = load_quiver(r.o.quiver);
    if (!r.o.potential.empty() || doc.potential) {
      Potential w = resolve_potential(doc, r.o.potential);
      bool ok = sum_commutator_identity_check(w);
      t.add({r.o.quiver, w.poly().to_string(), "", yes(ok)});
      r.check(ok);
    } else {
      run_one(r.o.quiver, doc.quiver);
    }
  }
  r.emit(t);
}

// ---- hh ----

void hh_smallcomplex(Run& r) {
  Opts o = r.o;
  if (o.kind.empty()) o.kind = "kq";
  DgPresentation p = build_presentation(o);
  std::size_t L = static_cast<std::size_t>(o.max_len > 0 ? o.max_len : 3);
  SmallHHComplex c(p, L);
  auto w = c.total_matrix();
  std::size_t inside = static_cast<std::size_t>(std::count(w.in_window.begin(), w.in_window.end(), true));
  bool d2 = c.d_squared_zero();
  Table t({"presentation", "L", "relation_terms", "loop_terms", "columns_in_window", "rank", "d_squared_zero"});
  t.add({p.name(), std::to_string(L), std::to_string(c.relation_basis().size()),
         std::to_string(c.loop_basis().size()), std::to_string(inside), std::to_string(rank(w.matrix)), yes(d2)});
  r.check(d2);
  r.emit(t);
}

std::vector<std::pair<std::string, QuiverPtr>> quivers_for(const Opts& o) {
  std::vector<std::pair<std::string, QuiverPtr>> out;
  if (o.corpus) {
    for (const auto& cq : quiver_corpus()) out.emplace_back(cq.name, cq.q);
  } else {
    out.emplace_back(o.quiver, load_quiver(o.quiver).quiver);
  }
  return out;
}

void hh_cy(Run& r) {
  std::size_t L = static_cast<std::size_t>(r.o.max_len > 0 ? r.o.max_len : 3);
  Table t({"quiver", "L", "full_class", "in_window", "edge_term_only", "loop_term_only", "verdict"});
  for (const auto& [name, q] : quivers_for(r.o)) {
    CyCheck full = check_cy_class(*q, true, true, L);
    CyCheck edge = check_cy_class(*q, true, false, L);
    CyCheck loop = check_cy_class(*q, false, true, L);
    bool ok = full.cocycle && full.in_window && !edge.cocycle && !loop.cocycle;
    t.add({name, std::to_string(L), yes(full.cocycle), yes(full.in_window), yes(edge.cocycle), yes(loop.cocycle),
           ok ? "pass" : "fail"});
    r.check(ok);
  }
  r.emit(t);
}

void hh_h0dim(Run& r) {
  int max_l = r.o.max_len > 0 ? r.o.max_len : 4;
  Table t({"quiver", "L", "hh0_dimension", "necklaces", "match"});
  for (const auto& [name, q] : quivers_for(r.o))
    for (int L = 0; L <= max_l; ++L) {
      std::size_t h = hh0_dimension(*q, static_cast<std::size_t>(L));
      std::size_t k = necklace_basis(*q, static_cast<std::size_t>(L)).size();
      t.add({name, std::to_string(L), std::to_string(h), std::to_string(k), yes(h == k)});
      r.check(h == k);
    }
  r.emit(t);
}

// ---- lambda ----

void lambda_codim(Run& r) {
  std::vector<JordanSpec> specs;
  if (!r.o.spec.empty()) {
    specs.push_back(parse_jordan_spec(r.o.spec));
  } else {
    int lo = r.o.n > 0 ? r.o.n : 1, hi = r.o.n > 0 ? r.o.n : (r.o.max_n > 0 ? r.o.max_n : 6);
    for (int n = lo; n <= hi; ++n) {
      for (auto& l : partitions(n)) specs.push_back({{0, l}});
      if (r.o.two_eigenvalue)
        for (int k = 1; k < n; ++k)
          for (auto& l1 : partitions(k))
            for (auto& l2 : partitions(n - k)) specs.push_back({{0, l1}, {1, l2}});
    }
  }
  std::vector<std::string> header{"spec", "n", "centralizer_dim", "commutator_dim", "codim", "predicted", "verdict"};
  if (r.o.trials > 0) header.push_back("set_equals_span");
  Table t(header);
  std::mt19937_64 seeds(r.g.seed);
  for (const auto& s : specs) {
    CodimReport c = codim_theorem_check(s);
    std::vector<std::string> row{to_string(s), std::to_string(jordan_size(s)), std::to_string(c.centralizer_dim),
                                 std::to_string(c.commutator_dim), std::to_string(c.centralizer_dim - c.commutator_dim),
                                 std::to_string(c.predicted_codim), c.pass ? "pass" : "fail"};
    r.check(c.pass);
    if (r.o.trials > 0) {
      SetSpanReport ss = commutator_set_equals_span(jordan_matrix(s), static_cast<std::size_t>(r.o.trials), seeds(),
                                                    r.g.tol);
      row.push_back("exact=" + std::to_string(ss.exact) + " numeric=" + std::to_string(ss.numeric) +
                    " inconclusive=" + std::to_string(ss.inconclusive));
    }
    t.add(row);
  }
  r.emit(t);
}

void lambda_components(Run& r) {
  Table t({"n", "mu", "point", "frame_size", "rank_exact", "rank_float", "expected", "isotropy", "verdict"});
  std::mt19937_64 seeds(r.g.seed);
  for (const auto& mu : partitions_upto(r.o, 4)) {
    int n = partition_size(mu);
    for (int k = 0; k < r.o.points; ++k) {
      LambdaMuSample s = sample_lambda_mu(mu, seeds());
      std::size_t re = frame_rank(s.frame), rf = frame_rank_numeric(s.frame, r.g.tol);
      double iso = isotropy_check(s.frame);
      bool ok = re == static_cast<std::size_t>(n * n) && rf == re && iso <= r.g.tol;
      t.add({std::to_string(n), to_string(mu), std::to_string(k), std::to_string(s.frame.size()), std::to_string(re),
             std::to_string(rf), std::to_string(n * n), fmt(iso), ok ? "pass" : "fail"});
      r.check(ok);
    }
  }
  r.emit(t);
}

void lambda_isotropy(Run& r) {
  Table t({"n", "mu", "point", "pairs", "max_pairing_exact", "max_pairing_float", "verdict"});
  std::mt19937_64 seeds(r.g.seed);
  for (const auto& mu : partitions_upto(r.o, 4)) {
    int n = partition_size(mu);
    for (int k = 0; k < r.o.points; ++k) {
      LambdaMuSample s = sample_lambda_mu(mu, seeds());
      Rational ex = isotropy_exact(s.frame);
      double fl = isotropy_check(s.frame);
      bool ok = fl <= r.g.tol;
      std::size_t m = s.frame.size();
      t.add({std::to_string(n), to_string(mu), std::to_string(k), std::to_string(m * (m - 1) / 2), to_string(ex),
             fmt(fl), ok ? "pass" : "fail"});
      r.check(ok);
    }
  }
  // (E11, 0) against (0, E11) pairs to 1.
  MatQ e = MatQ::unit(2, 2, 0, 0), z(2, 2);
  Rational control = omega({e, z}, {z, e});
  t.add({"2", "control", "-", "1", to_string(control), fmt(control.get_d()), control == 1 ? "pass" : "fail"});
  r.check(control == 1);
  r.emit(t);
}

void lambda_degeneration(Run& r) {
  std::vector<Partition> lambdas;
  if (!r.o.lambda.empty()) {
    lambdas.push_back(parse_partition(r.o.lambda));
  } else {
    Opts o = r.o;
    o.mu.clear();
    lambdas = partitions_upto(o, 4);
  }
  Rational eps = parse_rational(r.o.eps);
  Table t({"lambda", "eps", "intertwining", "minimal_polynomial", "spectrum", "same_type", "limit_gap",
           "distance_first", "distance_last", "verdict"});
  std::mt19937_64 rng(r.g.seed);
  for (const auto& l : lambdas) {
    DegenerationReport d = check_degeneration(l, eps);
    // a random commutator for the limit point, and its distance to the commutator spaces along x(e)
    auto space = commutator_space(iterated_kernel_jordan(l));
    std::size_t n = static_cast<std::size_t>(partition_size(l));
    MatQ y(n, n);
    for (const auto& b : space) y += b * random_rational(rng, 3);
    std::vector<double> dist;
    Rational e = eps;
    for (int k = 0; k < 6; ++k, e /= 2) dist.push_back(commutator_space_distance(degeneration_xeps(l, e), y));
    bool shrinking = true;
    for (std::size_t k = 1; k < dist.size(); ++k) shrinking = shrinking && dist[k] <= dist[k - 1] + 1e-12;
    shrinking = shrinking && (dist.front() <= 1e-12 || dist.back() <= dist.front() / 8);
    bool ok = d.intertwining && d.minimal_polynomial && d.spectrum && d.same_type && shrinking;
    t.add({to_string(l), to_string(eps), yes(d.intertwining), yes(d.minimal_polynomial), yes(d.spectrum),
           yes(d.same_type), fmt(d.limit_gap), fmt(dist.front()), fmt(dist.back()), ok ? "pass" : "fail"});
    r.check(ok);
  }
  r.emit(t);
}

// ---- hilbert ----

void hilbert_stability(Run& r) {
  MatQ x = parse_matrix(r.o.x), xs = parse_matrix(r.o.xs), v = parse_matrix(r.o.v, true);
  bool stable = r.g.field == "float" ? stability_check(to_double(x), to_double(xs), to_double(v), r.g.tol)
                                     : stability_check(x, xs, v);
  std::mt19937_64 rng(r.g.seed);
  ADHMQ d{x, xs, v, MatQ(1, x.rows())};
  ADHMQ c = conjugate(d, random_invertible(x.rows(), rng));
  bool conj = stability_check(c.x, c.xs, c.v);
  Table t({"n", "field", "stable", "stable_after_conjugation", "verdict"});
  t.add({std::to_string(x.rows()), r.g.field, yes(stable), yes(conj), conj == stable ? "pass" : "fail"});
  r.check(conj == stable);
  r.emit(t);
}

void hilbert_strata(Run& r) {
  MatQ x = parse_matrix(r.o.x), xs = parse_matrix(r.o.xs);
  std::string points;
  std::optional<Partition> stratum;
  if (r.g.field == "float") {
    auto pts = hilbert_chow(to_double(x), to_double(xs), r.g.seed, r.g.tol);
    for (const auto& [a, b] : pts) points += (points.empty() ? "" : " ") + ("(" + fmt(a) + "," + fmt(b) + ")");
    for (auto& l : partitions(static_cast<int>(x.rows())))
      if (!stratum && stratum_test(pts, l, 1e-6)) stratum = l;
  } else {
    auto pts = hilbert_chow(x, xs);
    for (const auto& [a, b] : pts) points += (points.empty() ? "" : " ") + ("(" + to_string(a) + "," + to_string(b) + ")");
    stratum = stratum_of(pts);
  }
  Table t({"points", "stratum", "expected", "verdict"});
  std::string expected = r.o.lambda.empty() ? "" : to_string(parse_partition(r.o.lambda));
  bool ok = expected.empty() || (stratum && to_string(*stratum) == expected);
  t.add({points, stratum ? to_string(*stratum) : "none", expected, ok ? "pass" : "fail"});
  r.check(ok);
  r.emit(t);
}

void hilbert_components(Run& r) {
  std::vector<NestedPartition> list;
  if (!r.o.nested.empty()) {
    list.push_back(parse_nested(r.o.nested));
  } else {
    int lo = r.o.n > 0 ? r.o.n : 1, hi = r.o.n > 0 ? r.o.n : (r.o.max_n > 0 ? r.o.max_n : 4);
    for (int n = lo; n <= hi; ++n)
      for (auto& m : nested_partitions(n)) list.push_back(m);
  }
  Table t({"n", "nested_partition", "saturation", "lambda_n1", "stratum", "predicted", "in_stratum", "tangent_rank",
           "expected", "quotient_dim", "verdict"});
  std::mt19937_64 seeds(r.g.seed);
  for (const auto& m : list) {
    ComponentSample s = sample_component(m, seeds());
    int n = static_cast<int>(s.point.n());
    bool sat = saturation_membership(s.point.x, s.point.xs, s.point.v);
    bool l1 = lambda_n1_membership(s.point.x, s.point.xs, s.point.v);
    auto pts = hilbert_chow(s.point.x, s.point.xs);
    auto st = stratum_of(pts);
    bool in = stratum_test(pts, s.stratum);
    std::size_t rk = adhm_frame_rank(s.frame);
    bool ok = sat && in && rk == static_cast<std::size_t>(n + n * n);
    t.add({std::to_string(n), to_string(m), yes(sat), yes(l1), st ? to_string(*st) : "none", to_string(s.stratum),
           yes(in), std::to_string(rk), std::to_string(n + n * n), std::to_string(static_cast<int>(rk) - n * n),
           ok ? "pass" : "fail"});
    r.check(ok);
  }
  r.emit(t);
}

// Ordered tuples with weakly decreasing sizes, identified up to reordering equal sizes.
std::size_t brute_force_nested(int n) {
  std::set<NestedPartition> seen;
  NestedPartition cur;
  std::function<void(int, int)> rec = [&](int rest, int max_size) {
    if (rest == 0) {
      NestedPartition c = cur;
      std::sort(c.begin(), c.end(), [](const Partition& a, const Partition& b) {
        int sa = partition_size(a), sb = partition_size(b);
        return sa != sb ? sa > sb : a > b;
      });
      seen.insert(c);
      return;
    }
    for (int s = std::min(rest, max_size); s >= 1; --s)
      for (auto& p : partitions(s)) {
        cur.push_back(p);
        rec(rest - s, s);
        cur.pop_back();
      }
  };
  rec(n, n);
  return seen.size();
}

void hilbert_count(Run& r) {
  int hi = r.o.max_n > 0 ? r.o.max_n : 8;
  int lo = r.o.n > 0 ? r.o.n : 1;
  if (r.o.n > 0) hi = r.o.n;
  Table t({"n", "nested_partitions", "brute_force", "match"});
  for (int n = lo; n <= hi; ++n) {
    std::size_t a = nested_partitions(n).size(), b = brute_force_nested(n);
    t.add({std::to_string(n), std::to_string(a), std::to_string(b), yes(a == b)});
    r.check(a == b);
  }
  r.emit(t);
}

// ---- repvar ----

void repvar_moment(Run& r) {
  int n = r.o.n > 0 ? r.o.n : 3;
  std::mt19937_64 rng(r.g.seed);
  Table t({"n", "sample", "moment_zero_on_commuting", "equivariant", "verdict"});
  for (int k = 0; k < r.o.samples; ++k) {
    RepQ c = sample_commuting_rep(n, rng);
    bool zero = moment_map(c, "0").is_zero_matrix();
    RepQ a = random_rep_q(doubled_jordan(), uniform_dims(*doubled_jordan(), n), rng);
    MatQ g = random_invertible(static_cast<std::size_t>(n), rng);
    RepQ b = conjugate(a, {{"0", g}});
    bool eq = moment_map(b, "0") == g * moment_map(a, "0") * *inverse(g);
    t.add({std::to_string(n), std::to_string(k), yes(zero), yes(eq), zero && eq ? "pass" : "fail"});
    r.check(zero && eq);
  }
  r.emit(t);
}

void repvar_tangent(Run& r) {
  int lo = r.o.n > 0 ? r.o.n : 1, hi = r.o.n > 0 ? r.o.n : (r.o.max_n > 0 ? r.o.max_n : 4);
  std::mt19937_64 rng(r.g.seed);
  Table t({"n", "sample", "composition_defect", "duality_defect", "verdict"});
  for (int n = lo; n <= hi; ++n)
    for (int k = 0; k < r.o.samples; ++k) {
      RepQ rho = sample_commuting_rep(n, rng);
      auto c = tangent_complex_g2(rho);
      double comp = composition_defect(c), dual = duality_defect(c);
      bool ok = comp == 0 && dual == 0;
      t.add({std::to_string(n), std::to_string(k), fmt(comp), fmt(dual), ok ? "pass" : "fail"});
      r.check(ok);
    }
  r.emit(t);
}

void repvar_jacobian(Run& r) {
  Opts o = r.o;
  bool commuting = o.rel.empty() && o.kind.empty() && o.quiver == "s1";
  DgPresentation p = build_presentation(o);
  int n = std::max(1, o.n);
  PolySystem s = truncation_equations(p, uniform_dims(*p.algebra(), n));
  std::mt19937_64 rng(r.g.seed);
  Table t({"system", "n", "point", "variables", "rank_exact", "rank_float", "verdict"});
  for (int k = 0; k < std::max(1, o.samples); ++k) {
    RepQ rho;
    if (commuting) {
      rho = sample_commuting_rep(n, rng);
    } else {
      rho.quiver = p.algebra();
      rho.dims = s.dims;
      for (const auto& var : s.variables) {
        const Edge& e = p.algebra()->edge(var);
        rho.mats[var] = MatQ(static_cast<std::size_t>(rho.dim(e.src)), static_cast<std::size_t>(rho.dim(e.tgt)));
      }
    }
    std::size_t re = jacobian_rank(s, rho), rf = jacobian_rank(s, to_double(rho), r.g.tol);
    std::size_t vars = 0;
    for (const auto& [id, m] : rho.mats) vars += m.size();
    t.add({p.name(), std::to_string(n), commuting ? "commuting-" + std::to_string(k) : "zero", std::to_string(vars),
           std::to_string(re), std::to_string(rf), re == rf ? "pass" : "fail"});
    r.check(re == rf);
    if (!commuting) break;
  }
  r.emit(t);
}

// d/dt tr W(rho + t E) at t = 0 from values at t = 0..m (exact Lagrange differentiation).
Rational interpolated_derivative(const std::vector<Rational>& values) {
  int m = static_cast<int>(values.size()) - 1;
  Rational total = 0;
  for (int k = 0; k <= m; ++k) {
    Rational denom = 1;
    for (int j = 0; j <= m; ++j)
      if (j != k) denom *= k - j;
    Rational num = 0;
    for (int i = 0; i <= m; ++i) {
      if (i == k) continue;
      Rational prod = 1;
      for (int j = 0; j <= m; ++j)
        if (j != k && j != i) prod *= -j;
      num += prod;
    }
    total += values[static_cast<std::size_t>(k)] * num / denom;
  }
  return total;
}

void repvar_gradient(Run& r) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"a2tilde", "abc"}, {"s3abc", "abc"}, {"s3", "xyz-commutator"}};
  int hi = r.o.max_n > 0 ? r.o.max_n : 3;
  std::mt19937_64 rng(r.g.seed);
  Table t({"quiver", "potential", "n", "fd_rel_error", "fd_ok", "exact_oracle", "verdict"});
  for (const auto& [qname, wname] : cases) {
    QuiverPtr q = builtin_quiver(qname);
    Potential w = named_potential(q, wname);
    for (int n = 1; n <= hi; ++n) {
      RepQ rho = random_rep_q(q, uniform_dims(*q, n), rng);
      auto g = potential_gradient(w, rho);
      auto fd = finite_difference_gradient(w, to_double(rho));
      double err = 0, scale = 1;
      for (const auto& [id, m] : g) {
        scale = std::max(scale, max_abs(m));
        err = std::max(err, max_abs(fd.at(id) - to_double(m)));
      }
      double rel = err / scale;
      bool exact = true;
      std::size_t m = w.poly().max_length();
      for (const auto& [id, gm] : g)
        for (std::size_t i = 0; i < gm.rows(); ++i)
          for (std::size_t j = 0; j < gm.cols(); ++j) {
            std::vector<Rational> vals;
            for (std::size_t s = 0; s <= m; ++s) {
              RepQ moved = rho;
              moved.mats[id](i, j) += static_cast<int>(s);
              vals.push_back(trace_of_potential(w, moved));
            }
            exact = exact && interpolated_derivative(vals) == gm(i, j);
          }
      bool ok = rel <= 1e-6 && exact;
      t.add({qname, wname, std::to_string(n), fmt(rel), yes(rel <= 1e-6), yes(exact), ok ? "pass" : "fail"});
      r.check(ok);
    }
  }
  r.emit(t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdg: quiver dg-algebras, representation varieties and commuting-variety checks"};
  app.fallthrough();
  app.require_subcommand(1);
  Run r;
  std::string command;
  std::function<void(Run&)> action;

  app.add_option("--seed", r.g.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--tol", r.g.tol, "float tolerance")->capture_default_str();
  app.add_option("--field", r.g.field, "rational or float")->check(CLI::IsMember({"rational", "float"}))
      ->capture_default_str();
  app.add_option("--out", r.g.out, "write the report to this file instead of stdout");
  app.add_option("--format", r.g.format, "csv or txt")->check(CLI::IsMember({"csv", "txt"}))->capture_default_str();

  Opts& o = r.o;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<void(Run&)> fn) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&, fn, name, parent] {
      command = parent->get_name() + " " + name;
      action = fn;
    });
    return sub;
  };
  auto presentation_opts = [&](CLI::App* s) {
    s->add_option("--quiver", o.quiver, "builtin name or quiver JSON file")->capture_default_str();
    s->add_option("--potential", o.potential, "0, abc, xyz-commutator, abc-commutator or polynomial text");
    s->add_option("--kind", o.kind, "kq, g2, g3, rel2, rel3 (default g3 when a potential is given, else g2)");
    s->add_option("--rel", o.rel, "builtin inclusion: " + [] {
      std::string j;
      for (const auto& n : builtin_relative_names()) j += (j.empty() ? "" : ", ") + n;
      return j;
    }());
    s->add_option("--sub", o.sub, "edges of D (comma separated) or 'none'");
    s->add_option("--empty-d", o.empty_d, "vertices of an edgeless D: all or none")->capture_default_str();
  };

  CLI::App* dg = app.add_subcommand("dg", "dg-algebra presentations");
  dg->require_subcommand(1);
  auto* b = leaf(dg, "build", "print a presentation", dg_build);
  presentation_opts(b);
  b->add_flag("--json", o.json, "structured document instead of a table");
  auto* c = leaf(dg, "check", "verify d^2 = 0", dg_check);
  presentation_opts(c);
  c->add_flag("--corpus", o.corpus, "all constructors over the test corpus");
  auto* h = leaf(dg, "h0", "degree-0 relations", dg_h0);
  presentation_opts(h);
  h->add_flag("--corpus", o.corpus, "compare with the preprojective relations on the corpus");
  auto* tr = leaf(dg, "trunc", "truncated equations", dg_trunc);
  presentation_opts(tr);
  tr->add_option("--n", o.n, "uniform dimension");
  tr->add_flag("--print", o.print, "print the equations as text");
  tr->add_flag("--implied", o.implied, "include equations implied by the others");
  tr->add_flag("--corpus", o.corpus, "compare the two worked inclusions with their expected equations");
  auto* cy = leaf(dg, "cyclic", "sum over arrows of [e, dW/de] = 0", dg_cyclic);
  presentation_opts(cy);
  cy->add_flag("--corpus", o.corpus, "random potentials on every corpus quiver");
  cy->add_option("--count", o.count, "random potentials per quiver")->capture_default_str();
  cy->add_option("--max-len", o.max_len, "maximal cycle length");

  CLI::App* hh = app.add_subcommand("hh", "small Hochschild complex");
  hh->require_subcommand(1);
  auto* sc = leaf(hh, "smallcomplex", "window of the total complex", hh_smallcomplex);
  presentation_opts(sc);
  sc->add_option("--L", o.max_len, "length bound (default 3)");
  auto* cc = leaf(hh, "cy-cocycle", "the Calabi-Yau class and its two truncations", hh_cy);
  cc->add_option("--quiver", o.quiver, "builtin name or quiver JSON file")->capture_default_str();
  cc->add_flag("--corpus", o.corpus, "every corpus quiver");
  cc->add_option("--L", o.max_len, "length bound (default 3)");
  auto* hd = leaf(hh, "h0dim", "HH0 dimension against necklace counts", hh_h0dim);
  hd->add_option("--quiver", o.quiver, "builtin name or quiver JSON file")->capture_default_str();
  hd->add_flag("--corpus", o.corpus, "every corpus quiver");
  hd->add_option("--L", o.max_len, "largest length bound (default 4)");

  CLI::App* lam = app.add_subcommand("lambda", "commutator spaces and the components of Lambda_n");
  lam->require_subcommand(1);
  auto* cd = leaf(lam, "codim", "codimension of the commutator space in the centralizer", lambda_codim);
  cd->add_option("--n", o.n, "only this size");
  cd->add_option("--max-n", o.max_n, "all sizes up to this (default 6)");
  cd->add_option("--spec", o.spec, "Jordan spec such as 0:2,1;1:1");
  cd->add_flag("--two-eigenvalue", o.two_eigenvalue, "also specs with eigenvalues 0 and 1");
  cd->add_option("--trials", o.trials, "random commutators to write as single brackets");
  auto* co = leaf(lam, "components", "tangent rank and isotropy on each Lambda_mu", lambda_components);
  auto* is = leaf(lam, "isotropy", "pairings of tangent frames plus a negative control", lambda_isotropy);
  for (auto* s : {co, is}) {
    s->add_option("--n", o.n, "only this size");
    s->add_option("--max-n", o.max_n, "all sizes up to this (default 4)");
    s->add_option("--mu", o.mu, "single partition such as 2,1");
    s->add_option("--points", o.points, "sample points per partition")->capture_default_str();
  }
  auto* dgn = leaf(lam, "degeneration", "the diagonalizable deformation x(eps) of a nilpotent", lambda_degeneration);
  dgn->add_option("--lambda", o.lambda, "nilpotent type such as 2,1");
  dgn->add_option("--max-n", o.max_n, "all types up to this size (default 4)");
  dgn->add_option("--eps", o.eps, "rational eps")->capture_default_str();

  CLI::App* hil = app.add_subcommand("hilbert", "ADHM data, Hilbert-Chow and the saturation L_n");
  hil->require_subcommand(1);
  auto* st = leaf(hil, "stability", "C<x,x*>.v = C^n", hilbert_stability);
  st->add_option("--x", o.x, "matrix, rows separated by ';'")->required();
  st->add_option("--xs", o.xs, "matrix x*")->required();
  st->add_option("--v", o.v, "vector")->required();
  auto* sr = leaf(hil, "strata", "joint spectrum and its stratum", hilbert_strata);
  sr->add_option("--x", o.x, "matrix, rows separated by ';'")->required();
  sr->add_option("--xs", o.xs, "matrix x*")->required();
  sr->add_option("--lambda", o.lambda, "expected stratum");
  auto* cp = leaf(hil, "components", "sampled points of every component of L_n", hilbert_components);
  cp->add_option("--n", o.n, "only this size");
  cp->add_option("--max-n", o.max_n, "all sizes up to this (default 4)");
  cp->add_option("--nested", o.nested, "single nested partition such as 2,1;1");
  auto* cn = leaf(hil, "count-nested", "nested partitions against brute force", hilbert_count);
  cn->add_option("--n", o.n, "only this size");
  cn->add_option("--max-n", o.max_n, "all sizes up to this (default 8)");

  CLI::App* rv = app.add_subcommand("repvar", "representation varieties");
  rv->require_subcommand(1);
  auto* mm = leaf(rv, "moment", "moment map on commuting pairs and its equivariance", repvar_moment);
  mm->add_option("--n", o.n, "matrix size (default 3)");
  mm->add_option("--samples", o.samples, "samples")->capture_default_str();
  auto* tg = leaf(rv, "tangent", "three-term tangent complex at commuting pairs", repvar_tangent);
  tg->add_option("--n", o.n, "only this size");
  tg->add_option("--max-n", o.max_n, "all sizes up to this (default 4)");
  tg->add_option("--samples", o.samples, "samples per size")->capture_default_str();
  auto* jc = leaf(rv, "jacobian", "exact and float Jacobian rank", repvar_jacobian);
  presentation_opts(jc);
  jc->add_option("--n", o.n, "uniform dimension");
  jc->add_option("--samples", o.samples, "commuting samples")->capture_default_str();
  auto* gr = leaf(rv, "gradient", "gradient of tr W against cyclic derivatives", repvar_gradient);
  gr->add_option("--max-n", o.max_n, "sizes up to this (default 3)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    action(r);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInput& e) {
    err << "unsupported input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return 2;
  }

  std::ostringstream doc;
  doc << "# seed=" << r.g.seed << " field=" << r.g.field << " tol=" << fmt(r.g.tol) << " command=" << command
      << "\n";
  doc << r.body.str();
  if (r.g.out.empty()) {
    out << doc.str();
  } else {
    std::ofstream f(r.g.out);
    if (!f) {
      err << "cannot write " << r.g.out << "\n";
      return 2;
    }
    f << doc.str();
  }
  return r.failed ? 1 : 0;
}

}  // namespace qdg::cli
