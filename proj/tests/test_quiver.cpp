#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qdg/corpus.hpp"
#include "qdg/errors.hpp"
#include "qdg/ncpoly.hpp"
#include "qdg/quiver.hpp"
#include "qdg/quiver_io.hpp"

using namespace qdg;

namespace {

QuiverPtr a2tilde() { return builtin_quiver("a2tilde"); }

NCPolynomial random_poly(QuiverPtr q, std::mt19937_64& rng, std::size_t max_len) {
  NCPolynomial p(q);
  auto paths = paths_up_to(*q, max_len);
  for (int k = 0; k < 4; ++k) p.add_term(paths[rng() % paths.size()], random_rational(rng, 3));
  return p;
}

}  // namespace

TEST_SUITE("quiver") {
  TEST_CASE("quiver validation") {
    CHECK_THROWS_AS(Quiver({"0"}, {{"a", "0", "1"}}), InputError);
    CHECK_THROWS_AS(Quiver({"0"}, {{"a", "0", "0"}, {"a", "0", "0"}}), InputError);
    CHECK_NOTHROW(Quiver({"0", "1"}, {{"a", "0", "1"}, {"b", "0", "1"}, {"c", "1", "1"}}));
  }

  TEST_CASE("double quiver") {
    Quiver s1 = *builtin_quiver("s1");
    Quiver d = double_quiver(s1);
    CHECK(d.num_vertices() == 1);
    CHECK(d.num_edges() == 2);
    CHECK(d.has_edge("a"));
    CHECK(d.has_edge(star("a")));

    Quiver edgeless({"0", "1", "2"}, {});
    CHECK(double_quiver(edgeless) == edgeless);

    QuiverPtr base = a2tilde();
    Quiver t = double_quiver(*base);
    CHECK(t.num_edges() == 6);
    for (const auto& e : base->edges()) {
      CHECK(t.edge(star(e.id)).src == e.tgt);
      CHECK(t.edge(star(e.id)).tgt == e.src);
    }

    CHECK_THROWS_AS(double_quiver(Quiver({"0"}, {{"a*", "0", "0"}})), InputError);
  }

  TEST_CASE("frame") {
    Quiver f = frame(*builtin_quiver("s1"));
    CHECK(f.num_vertices() == 2);
    CHECK(f.num_edges() == 2);
    CHECK(f.edge(framing_edge("0")).src == framing_vertex("0"));
    CHECK(f.edge(framing_edge("0")).tgt == "0");
    CHECK(frame(Quiver{}).num_vertices() == 0);
    Quiver t = frame(*a2tilde());
    CHECK(t.num_vertices() == 6);
    CHECK(t.num_edges() == 6);
  }

  TEST_CASE("necklace basis") {
    CHECK(necklace_basis(*builtin_quiver("s1"), 3).size() == 4);
    CHECK(necklace_basis(*builtin_quiver("s3"), 2).size() == 10);
    CHECK(necklace_basis(*a2tilde(), 2).size() == 3);
    for (const auto& name : builtin_quiver_names()) {
      auto q = builtin_quiver(name);
      for (std::size_t L = 0; L <= 4; ++L) CHECK(necklace_basis(*q, L).size() == oracle::necklace_count(*q, L));
    }
  }

  TEST_CASE("necklaces are distinct up to rotation") {
    auto basis = necklace_basis(*builtin_quiver("s3"), 4);
    std::set<std::vector<std::string>> rotations;
    for (const auto& n : basis) {
      if (n.word.empty()) continue;
      for (std::size_t r = 0; r < n.word.size(); ++r) {
        std::vector<std::string> rot(n.word.begin() + static_cast<long>(r), n.word.end());
        rot.insert(rot.end(), n.word.begin(), n.word.begin() + static_cast<long>(r));
        CHECK(rot >= n.word);
        if (r == 0) CHECK(rotations.insert(rot).second);
      }
    }
  }
}

TEST_SUITE("ncpoly") {
  TEST_CASE("multiplication examples") {
    QuiverPtr s1bar = make_quiver(double_quiver(*builtin_quiver("s1")));
    NCPolynomial a = NCPolynomial::edge(s1bar, "a"), as = NCPolynomial::edge(s1bar, "a*");
    CHECK(a * as == NCPolynomial::word(s1bar, {"a", "a*"}));

    QuiverPtr q = a2tilde();
    NCPolynomial e0 = NCPolynomial::idempotent(q, "0"), e1 = NCPolynomial::idempotent(q, "1");
    CHECK((e0 * e1).is_zero());
    CHECK(e0 * e0 == e0);
    NCPolynomial pa = NCPolynomial::edge(q, "a"), pb = NCPolynomial::edge(q, "b");
    CHECK(pa * pb == NCPolynomial::word(q, {"a", "b"}));
    CHECK((pb * pa).is_zero());
  }

  TEST_CASE("associativity and local units") {
    std::mt19937_64 rng(7);
    for (const auto& name : builtin_quiver_names()) {
      QuiverPtr q = builtin_quiver(name);
      for (int t = 0; t < 20; ++t) {
        NCPolynomial a = random_poly(q, rng, 3), b = random_poly(q, rng, 3), c = random_poly(q, rng, 3);
        CHECK((a * b) * c == a * (b * c));
      }
      for (const auto& p : paths_up_to(*q, 3)) {
        NCPolynomial m = NCPolynomial::from_path(q, p);
        NCPolynomial s = NCPolynomial::idempotent(q, q->vertices()[static_cast<std::size_t>(p.start)]);
        NCPolynomial e = NCPolynomial::idempotent(q, q->vertices()[static_cast<std::size_t>(path_end(*q, p))]);
        CHECK(s * m == m);
        CHECK(m * e == m);
      }
    }
  }

  TEST_CASE("no zero coefficients are stored") {
    QuiverPtr q = builtin_quiver("s2");
    NCPolynomial p = parse_polynomial(q, "xy - yx") + parse_polynomial(q, "yx - xy");
    CHECK(p.is_zero());
    CHECK(p.size() == 0);
  }

  TEST_CASE("cyclic derivative examples") {
    QuiverPtr t = a2tilde();
    Potential abc = named_potential(t, "abc");
    CHECK(cyclic_derivative(abc, "a") == NCPolynomial::word(t, {"b", "c"}));
    CHECK(cyclic_derivative(abc, "b") == NCPolynomial::word(t, {"c", "a"}));
    CHECK(cyclic_derivative(abc, "c") == NCPolynomial::word(t, {"a", "b"}));

    QuiverPtr s3 = builtin_quiver("s3");
    Potential w = named_potential(s3, "xyz-commutator");
    CHECK(cyclic_derivative(w, "z") == parse_polynomial(s3, "xy - yx"));
    CHECK(cyclic_derivative(w, "x") == parse_polynomial(s3, "yz - zy"));
    CHECK(cyclic_derivative(named_potential(s3, "xyz"), "x") == parse_polynomial(s3, "yz"));

    QuiverPtr s3p = builtin_quiver("s3+");
    CHECK(cyclic_derivative(named_potential(s3p, "xyz-commutator"), framing_edge("0")).is_zero());
  }

  TEST_CASE("cyclic derivative is linear") {
    std::mt19937_64 rng(11);
    for (const auto& cq : quiver_corpus()) {
      Potential a = random_potential(cq.q, 4, 3, rng), b = random_potential(cq.q, 4, 3, rng);
      Rational s = random_rational(rng, 5, 3);
      Potential comb(a.poly() + s * b.poly());
      for (const auto& e : cq.q->edges())
        CHECK(cyclic_derivative(comb, e.id) == cyclic_derivative(a, e.id) + s * cyclic_derivative(b, e.id));
    }
  }

  TEST_CASE("sum commutator identity") {
    CHECK(sum_commutator_identity_check(named_potential(builtin_quiver("s3"), "xyz-commutator")));
    CHECK(sum_commutator_identity_check(named_potential(a2tilde(), "abc")));
    CHECK(sum_commutator_identity_check(Potential::zero(a2tilde())));
  }

  TEST_CASE("potentials must be cycles") {
    QuiverPtr t = a2tilde();
    CHECK_THROWS_AS(Potential(NCPolynomial::word(t, {"a", "b"})), InputError);
    CHECK_THROWS_AS(Potential(NCPolynomial::idempotent(t, "0")), InputError);
  }

  TEST_CASE("polynomial parsing") {
    QuiverPtr s3 = builtin_quiver("s3");
    NCPolynomial p = parse_polynomial(s3, "2/3 xyz - y.x.z");
    CHECK(p.coeff(NCPolynomial::word(s3, {"x", "y", "z"}).terms().begin()->first) == Rational(2, 3));
    CHECK(p.size() == 2);
    CHECK_THROWS_AS(parse_polynomial(s3, "xq"), InputError);
    CHECK_THROWS_AS(parse_polynomial(a2tilde(), "ba"), InputError);
  }
}

TEST_SUITE("quiver_io") {
  TEST_CASE("document round trip") {
    QuiverPtr s3 = builtin_quiver("s3");
    Potential w = named_potential(s3, "xyz-commutator");
    QuiverDocument doc = parse_quiver_document(quiver_document_json(*s3, &w));
    CHECK(*doc.quiver == *s3);
    REQUIRE(doc.potential);
    CHECK(transport(doc.potential->poly(), s3) == w.poly());
  }

  TEST_CASE("schema violations") {
    CHECK_THROWS_AS(parse_quiver_document("{"), InputError);
    CHECK_THROWS_AS(parse_quiver_document(R"({"vertices":["0"],"edges":[{"id":"a","src":"0","tgt":"9"}]})"),
                    InputError);
    CHECK_THROWS_AS(parse_quiver_document(R"({"vertices":["0"],"edges":[{"id":"a","src":"0"}]})"), InputError);
    CHECK_THROWS_AS(
        parse_quiver_document(
            R"({"vertices":["0","1"],"edges":[{"id":"a","src":"0","tgt":"1"}],"potential":[{"coeff":"1","cycle":["a"]}]})"),
        InputError);
    CHECK_THROWS_AS(
        parse_quiver_document(
            R"({"vertices":["0"],"edges":[{"id":"a","src":"0","tgt":"0"}],"potential":[{"coeff":"1/0","cycle":["a"]}]})"),
        InputError);
  }
}
