#include <doctest.h>

#include "qdg/corpus.hpp"
#include "qdg/dg.hpp"
#include "qdg/errors.hpp"

using namespace qdg;

namespace {

NCPolynomial poly(const DgPresentation& p, const std::string& text) { return parse_polynomial(p.algebra(), text); }

NCPolynomial gen(const DgPresentation& p, const std::string& id) { return NCPolynomial::edge(p.algebra(), id); }

NCPolynomial zero(const DgPresentation& p) { return NCPolynomial(p.algebra()); }

// sum over arrows of e_v (e e* - e* e) e_v, built independently of the constructor
NCPolynomial preprojective(const DgPresentation& p, const Quiver& q, const std::string& v) {
  NCPolynomial out = zero(p);
  NCPolynomial ev = NCPolynomial::idempotent(p.algebra(), v);
  for (const auto& e : q.edges())
    out += ev * (gen(p, e.id) * gen(p, star(e.id)) - gen(p, star(e.id)) * gen(p, e.id)) * ev;
  return out;
}

}  // namespace

TEST_SUITE("dg") {
  TEST_CASE("ginzburg2 of the Jordan quiver") {
    DgPresentation p = ginzburg2(*builtin_quiver("s1"));
    CHECK(p.generators_of_degree(0) == std::vector<std::string>{"a", "a*"});
    CHECK(p.generators_of_degree(-1) == std::vector<std::string>{loop_generator("0")});
    CHECK(p.d(loop_generator("0")) == poly(p, "aa* - a*a"));
    CHECK(p.d("a").is_zero());
  }

  TEST_CASE("ginzburg2 of an edgeless quiver") {
    DgPresentation p = ginzburg2(Quiver({"0", "1", "2"}, {}));
    CHECK(p.generators_of_degree(-1).size() == 3);
    for (const auto& g : p.generators_of_degree(-1)) CHECK(p.d(g).is_zero());
    for (const auto& r : h0_relations(p)) CHECK(r.is_zero());
  }

  TEST_CASE("ginzburg2 localizes per vertex") {
    Quiver q = *builtin_quiver("a2tilde");
    DgPresentation p = ginzburg2(q);
    CHECK(p.generators_of_degree(0).size() == 6);
    CHECK(p.generators_of_degree(-1).size() == 3);
    CHECK(p.d(loop_generator("0")) == poly(p, "aa* - c*c"));
    for (const auto& v : q.vertices()) CHECK(p.d(loop_generator(v)) == preprojective(p, q, v));
  }

  TEST_CASE("ginzburg3 with the commutator potential") {
    QuiverPtr s3 = builtin_quiver("s3");
    DgPresentation p = ginzburg3(named_potential(s3, "xyz-commutator"));
    CHECK(p.d(prime("z")) == poly(p, "xy - yx"));
    CHECK(p.d(prime("y")) == poly(p, "zx - xz"));
    CHECK(p.d(prime("x")) == poly(p, "yz - zy"));
    NCPolynomial expected = zero(p);
    for (const char* e : {"x", "y", "z"})
      expected += gen(p, e) * gen(p, prime(e)) - gen(p, prime(e)) * gen(p, e);
    CHECK(p.d(double_loop_generator("0")) == expected);
    CHECK(check_d_squared(p).pass);
  }

  TEST_CASE("ginzburg3 with zero and cubic potentials") {
    QuiverPtr t = builtin_quiver("a2tilde");
    DgPresentation z = ginzburg3(Potential::zero(t));
    for (const auto& e : t->edges()) CHECK(z.d(prime(e.id)).is_zero());
    DgPresentation p = ginzburg3(named_potential(t, "abc"));
    CHECK(p.d(prime("a")) == poly(p, "bc"));
    CHECK(p.d(prime("b")) == poly(p, "ca"));
    CHECK(p.d(prime("c")) == poly(p, "ab"));
    CHECK(p.algebra()->edge(prime("a")).src == "1");
    CHECK(p.algebra()->edge(prime("a")).tgt == "0");
  }

  TEST_CASE("relative ginzburg2") {
    Quiver s3 = *builtin_quiver("s3");
    DgPresentation full = relative_ginzburg2(s3, s3);
    DgPresentation g2 = ginzburg2(s3);
    CHECK(*full.algebra() == *g2.algebra());
    for (const auto& g : g2.generators()) CHECK(transport(full.d(g.id), g2.algebra()) == g2.d(g.id));

    DgPresentation empty = relative_ginzburg2(empty_subquiver(s3, EmptySubquiver::AllVertices), s3);
    CHECK(empty.generators_of_degree(0) == std::vector<std::string>{"x", "y", "z"});
    CHECK(empty.generators_of_degree(-1).size() == 1);
    CHECK(empty.d(loop_generator("0")).is_zero());
    DgPresentation none = relative_ginzburg2(empty_subquiver(s3, EmptySubquiver::NoVertices), s3);
    CHECK(none.generators_of_degree(-1).empty());

    DgPresentation sub = relative_ginzburg2(edge_subquiver(s3, {"x"}, true), s3);
    CHECK(sub.generators_of_degree(0) == std::vector<std::string>{"x", "y", "z", "x*"});
    CHECK(sub.d(loop_generator("0")) == poly(sub, "xx* - x*x"));
  }

  TEST_CASE("subquiver violations") {
    Quiver s3 = *builtin_quiver("s3");
    Quiver bad({"0"}, {{"w", "0", "0"}});
    CHECK_THROWS_AS(relative_ginzburg2(bad, s3), InputError);
    CHECK_THROWS_AS(relative_ginzburg3(s3, bad, Potential::zero(builtin_quiver("s3"))), InputError);
    CHECK_THROWS_AS(edge_subquiver(s3, {"q"}, true), InputError);
  }

  TEST_CASE("relative ginzburg3 on the loop inclusion") {
    RelativeCase c = builtin_relative("s1x-in-s3");
    DgPresentation p = relative_ginzburg3(*c.q, *c.d, c.w);
    CHECK(p.d(prime("x")) == poly(p, "x* - yz + zy"));
    CHECK(p.d(prime("y")) == -poly(p, "zx - xz"));
    CHECK(p.d(prime("z")) == -poly(p, "xy - yx"));
    CHECK(p.d(loop_generator("0")) == poly(p, "xx* - x*x"));
    NCPolynomial expected = gen(p, loop_generator("0"));
    for (const char* e : {"x", "y", "z"})
      expected -= gen(p, e) * gen(p, prime(e)) - gen(p, prime(e)) * gen(p, e);
    CHECK(p.d(double_loop_generator("0")) == expected);
  }

  TEST_CASE("relative ginzburg3 on the cyclic inclusion") {
    RelativeCase c = builtin_relative("a2-in-a2tilde");
    DgPresentation p = relative_ginzburg3(*c.q, *c.d, c.w);
    CHECK(p.d(prime("a")) == poly(p, "a* - bc"));
    CHECK(p.d(prime("b")) == -poly(p, "ca"));
    CHECK(p.d(prime("c")) == -poly(p, "ab"));
    auto implied = implied_relations(p);
    CHECK(implied.count(loop_generator("0")) == 1);
    CHECK(implied.count(loop_generator("1")) == 1);
    CHECK(implied.count(prime("a")) == 0);
  }

  TEST_CASE("relative ginzburg3 with D = Q and D empty") {
    for (const auto& cq : quiver_corpus())
      for (const auto& wname : cq.potentials) {
        Potential w = named_potential(cq.q, wname);
        DgPresentation full = relative_ginzburg3(*cq.q, *cq.q, w);
        DgPresentation empty =
            relative_ginzburg3(*cq.q, empty_subquiver(*cq.q, EmptySubquiver::AllVertices), w);
        for (const auto& e : cq.q->edges()) {
          NCPolynomial dw = transport(cyclic_derivative(w, e.id), full.algebra());
          CHECK(full.d(prime(e.id)) == gen(full, star(e.id)) - dw);
          CHECK(empty.d(prime(e.id)) == -transport(cyclic_derivative(w, e.id), empty.algebra()));
        }
      }
  }

  TEST_CASE("d squared on all constructors") {
    for (const auto& cq : quiver_corpus()) {
      CHECK(check_d_squared(ginzburg2(*cq.q)).pass);
      CHECK(check_d_squared(relative_ginzburg2(*cq.q, *cq.q)).pass);
      for (const auto& wname : cq.potentials) {
        Potential w = named_potential(cq.q, wname);
        CHECK(check_d_squared(ginzburg3(w)).pass);
        CHECK(check_d_squared(relative_ginzburg3(*cq.q, *cq.q, w)).pass);
      }
    }
    for (const auto& name : builtin_relative_names()) {
      RelativeCase c = builtin_relative(name);
      CHECK(check_d_squared(relative_ginzburg2(*c.d, *c.q)).pass);
      CHECK(check_d_squared(relative_ginzburg3(*c.q, *c.d, c.w)).pass);
    }
  }

  TEST_CASE("d squared detects a corrupted sign") {
    DgPresentation p = ginzburg3(named_potential(builtin_quiver("s3"), "xyz-commutator"));
    NCPolynomial bad = poly(p, "xx' + yy' - zz' - x'x - y'y + z'z");
    DSquaredReport r = check_d_squared(p.with_differential(double_loop_generator("0"), bad));
    CHECK_FALSE(r.pass);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].generator == double_loop_generator("0"));
    CHECK_FALSE(r.failures[0].residual.is_zero());
  }

  TEST_CASE("leibniz extension") {
    DgPresentation p = ginzburg2(*builtin_quiver("s1"));
    NCPolynomial x = gen(p, loop_generator("0")), a = gen(p, "a");
    NCPolynomial dx = poly(p, "aa* - a*a");
    CHECK(leibniz_extend(p, x) == dx);
    CHECK(leibniz_extend(p, a * x) == a * dx);
    CHECK(leibniz_extend(p, x * x) == dx * x - x * dx);
    CHECK_THROWS(leibniz_extend(p, a + x));
  }

  TEST_CASE("h0 relations") {
    DgPresentation g2 = ginzburg2(*builtin_quiver("s1"));
    auto r = h0_relations(g2);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == poly(g2, "aa* - a*a"));
    DgPresentation g3 = ginzburg3(named_potential(builtin_quiver("a2tilde"), "abc"));
    auto r3 = h0_relations(g3);
    REQUIRE(r3.size() == 3);
    CHECK(r3[0] == poly(g3, "bc"));
    CHECK(r3[1] == poly(g3, "ca"));
    CHECK(r3[2] == poly(g3, "ab"));
  }

  TEST_CASE("preprojective relations on the corpus") {
    for (const auto& cq : quiver_corpus()) {
      DgPresentation p = ginzburg2(*cq.q);
      auto gens = p.generators_of_degree(-1);
      auto rels = h0_relations(p);
      REQUIRE(gens.size() == cq.q->num_vertices());
      for (std::size_t i = 0; i < gens.size(); ++i)
        CHECK(rels[i] == preprojective(p, *cq.q, cq.q->vertices()[i]));
    }
  }

  TEST_CASE("presentation document round trip") {
    for (const auto& name : builtin_relative_names()) {
      RelativeCase c = builtin_relative(name);
      DgPresentation p = relative_ginzburg3(*c.q, *c.d, c.w);
      DgPresentation back = parse_presentation_json(presentation_json(p));
      CHECK(*back.algebra() == *p.algebra());
      for (const auto& g : p.generators()) CHECK(transport(back.d(g.id), p.algebra()) == p.d(g.id));
      CHECK(presentation_json(back) == presentation_json(p));
    }
    CHECK_THROWS_AS(parse_presentation_json("[]"), InputError);
  }

  TEST_CASE("constructor validation") {
    QuiverPtr s1 = builtin_quiver("s1");
    DgPresentation p = ginzburg2(*s1);
    // wrong degree: d(x_0) must have degree 0
    CHECK_THROWS_AS(p.with_differential(loop_generator("0"), gen(p, loop_generator("0"))), InputError);
    CHECK_THROWS_AS(path_algebra(*ginzburg3(Potential::zero(s1)).algebra()), InputError);
  }
}
