// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qdg/commvar.hpp"
#include "qdg/corpus.hpp"
#include "qdg/dg.hpp"
#include "qdg/hilbert.hpp"
#include "qdg/hochschild.hpp"
#include "qdg/repvar.hpp"

using namespace qdg;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void codimension(Verdict& v) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t specs = 0;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& l : partitions(n)) {
      CodimReport r = codim_theorem_check({{0, l}});
      v.require(r.pass && r.centralizer_dim - r.commutator_dim == static_cast<std::size_t>(l[0]), to_string(l));
      v.require(r.centralizer_dim == oracle::centralizer_dim(l), "centralizer " + to_string(l));
      ++specs;
    }
    for (int k = 1; k < n; ++k)
      for (const auto& l1 : partitions(k))
        for (const auto& l2 : partitions(n - k)) {
          CodimReport r = codim_theorem_check({{0, l1}, {1, l2}});
          v.require(r.pass && r.centralizer_dim - r.commutator_dim == static_cast<std::size_t>(l1[0] + l2[0]),
                    to_string(l1) + "+" + to_string(l2));
          ++specs;
        }
  }
  double t = seconds_since(t0);
  v.require(t < 60, "runtime");
  v.detail << specs << " specs, " << t << " s";
}

void lambda_components(Verdict& v) {
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  std::size_t points = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& mu : partitions(n))
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        LambdaMuSample s = sample_lambda_mu(mu, seed);
        std::size_t re = frame_rank(s.frame), rf = frame_rank_numeric(s.frame, 1e-8);
        double iso = isotropy_check(s.frame);
        worst = std::max(worst, iso);
        v.require(re == static_cast<std::size_t>(n * n) && rf == re, "rank " + to_string(mu));
        v.require(iso <= 1e-8, "isotropy " + to_string(mu));
        ++points;
      }
  double t = seconds_since(t0);
  v.require(t < 120, "runtime");
  v.detail << points << " points, max pairing " << worst << ", " << t << " s";
}

void d_squared(Verdict& v) {
  std::size_t count = 0;
  auto check = [&](const std::string& what, const DgPresentation& p) {
    v.require(check_d_squared(p).pass, what);
    ++count;
  };
  for (const auto& cq : quiver_corpus()) {
    check("g2 " + cq.name, ginzburg2(*cq.q));
    check("rel2 " + cq.name, relative_ginzburg2(*cq.q, *cq.q));
    check("rel2 empty " + cq.name, relative_ginzburg2(empty_subquiver(*cq.q, EmptySubquiver::AllVertices), *cq.q));
    for (const auto& wn : cq.potentials) {
      Potential w = named_potential(cq.q, wn);
      check("g3 " + cq.name, ginzburg3(w));
      check("rel3 " + cq.name, relative_ginzburg3(*cq.q, *cq.q, w));
      for (auto reading : {EmptySubquiver::AllVertices, EmptySubquiver::NoVertices})
        check("rel3 empty " + cq.name, relative_ginzburg3(*cq.q, empty_subquiver(*cq.q, reading), w));
    }
  }
  for (const auto& name : builtin_relative_names()) {
    RelativeCase c = builtin_relative(name);
    check("rel2 " + name, relative_ginzburg2(*c.d, *c.q));
    check("rel3 " + name, relative_ginzburg3(*c.q, *c.d, c.w));
    check("rel3 W=0 " + name, relative_ginzburg3(*c.q, *c.d, Potential::zero(c.q)));
  }
  v.detail << count << " presentations";
}

std::string normalized(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

void truncation(Verdict& v) {
  const std::vector<std::pair<std::string, std::set<std::string>>> cases = {
      {"a2-in-a2tilde", {"x_bx_c = x_{a*}", "x_cx_a = 0", "x_ax_b = 0"}},
      {"s1-in-s3", {"[x_b,x_c] = x_{a*}", "[x_c,x_a] = 0", "[x_a,x_b] = 0"}},
  };
  for (const auto& [name, expected] : cases) {
    RelativeCase c = builtin_relative(name);
    DgPresentation p = relative_ginzburg3(*c.q, *c.d, c.w);
    std::istringstream text(format_system(truncation_equations(p, uniform_dims(*p.algebra(), 1)), false));
    std::set<std::string> got, want;
    for (std::string line; std::getline(text, line);) got.insert(normalized(line));
    for (const auto& e : expected) want.insert(normalized(e));
    v.require(got == want, name);
  }
  v.detail << cases.size() << " inclusions";
}

void preprojective(Verdict& v) {
  std::size_t count = 0;
  for (const auto& cq : quiver_corpus()) {
    DgPresentation p = ginzburg2(*cq.q);
    const QuiverPtr& a = p.algebra();
    auto gens = p.generators_of_degree(-1);
    auto rels = h0_relations(p);
    for (const auto& vtx : cq.q->vertices()) {
      NCPolynomial expected(a), ev = NCPolynomial::idempotent(a, vtx);
      for (const auto& e : cq.q->edges()) {
        NCPolynomial x = NCPolynomial::edge(a, e.id), xs = NCPolynomial::edge(a, star(e.id));
        expected += ev * (x * xs - xs * x) * ev;
      }
      auto it = std::find(gens.begin(), gens.end(), loop_generator(vtx));
      v.require(it != gens.end() && rels[static_cast<std::size_t>(it - gens.begin())] == expected,
                cq.name + " vertex " + vtx);
      ++count;
    }
  }
  v.detail << count << " vertices";
}

void cy_cocycle(Verdict& v) {
  std::size_t count = 0;
  for (const auto& cq : quiver_corpus()) {
    CyCheck full = check_cy_class(*cq.q, true, true, 3);
    v.require(full.cocycle && full.in_window, cq.name + " full class");
    v.require(!check_cy_class(*cq.q, true, false, 3).cocycle, cq.name + " edge term only");
    v.require(!check_cy_class(*cq.q, false, true, 3).cocycle, cq.name + " loop term only");
    ++count;
  }
  v.detail << count << " quivers, L=3, both deletions fail";
}

void hh0(Verdict& v) {
  std::size_t count = 0;
  for (const auto& cq : quiver_corpus())
    for (std::size_t L = 0; L <= 4; ++L) {
      std::size_t expected = oracle::necklace_count(*cq.q, L);
      v.require(hh0_dimension(*cq.q, L) == expected, cq.name + " L=" + std::to_string(L));
      v.require(necklace_basis(*cq.q, L).size() == expected, cq.name + " necklaces L=" + std::to_string(L));
      ++count;
    }
  v.detail << count << " (quiver, L) pairs";
}

void self_duality(Verdict& v) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  DgPresentation g2 = ginzburg2(*builtin_quiver("s1"));
  std::size_t count = 0;
  for (int n = 1; n <= 4; ++n) {
    PolySystem s = truncation_equations(g2, uniform_dims(*g2.algebra(), n));
    for (int k = 0; k < 10; ++k) {
      RepQ rho = sample_commuting_rep(n, rng);
      v.require(residual(s, rho) == 0, "sample is not a solution");
      auto c = tangent_complex_g2(rho);
      v.require((c.B * c.A).is_zero_matrix(), "B A != 0 at n=" + std::to_string(n));
      v.require((c.B.transpose() * c.gl_pairing - c.omega.transpose() * c.A).is_zero_matrix(),
                "duality at n=" + std::to_string(n));
      ++count;
    }
  }
  double t = seconds_since(t0);
  v.require(t < 60, "runtime");
  v.detail << count << " solutions, " << t << " s";
}

void gradient(Verdict& v) {
  std::mt19937_64 rng(99);
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"a2tilde", "abc"}, {"s3abc", "abc"}, {"s3", "xyz-commutator"}};
  double worst = 0;
  for (const auto& [qn, wn] : cases) {
    QuiverPtr q = builtin_quiver(qn);
    Potential w = named_potential(q, wn);
    for (int n = 1; n <= 3; ++n) {
      RepQ rho = random_rep_q(q, uniform_dims(*q, n), rng);
      auto g = potential_gradient(w, rho);
      auto exact = oracle::symbolic_gradient(w, rho);
      auto fd = finite_difference_gradient(w, to_double(rho));
      double err = 0, scale = 1;
      for (const auto& e : q->edges()) {
        v.require(g.at(e.id) == exact.at(e.id), qn + " exact n=" + std::to_string(n));
        scale = std::max(scale, max_abs(g.at(e.id)));
        err = std::max(err, max_abs(fd.at(e.id) - to_double(g.at(e.id))));
      }
      worst = std::max(worst, err / scale);
      v.require(err / scale <= 1e-6, qn + " finite difference n=" + std::to_string(n));
    }
  }
  v.detail << "max relative finite-difference error " << worst;
}

void saturation(Verdict& v) {
  std::size_t count = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& m : nested_partitions(n)) {
      ComponentSample s = sample_component(m, 7);
      const ADHMQ& p = s.point;
      v.require(saturation_membership(p.x, p.xs, p.v), "saturation " + to_string(m));
      v.require(stratum_test(hilbert_chow(p.x, p.xs), nested_shape(m)), "stratum " + to_string(m));
      v.require(adhm_frame_rank(s.frame) == static_cast<std::size_t>(n + n * n), "rank " + to_string(m));
      ++count;
    }
  for (int n = 1; n <= 8; ++n)
    v.require(nested_partitions(n).size() == oracle::nested_brute_force(n), "count n=" + std::to_string(n));
  v.detail << count << " components, counts to n=8";
}

void cyclic_identity(Verdict& v) {
  std::mt19937_64 rng(11);
  std::size_t count = 0;
  for (const auto& cq : quiver_corpus())
    for (int k = 0; k < 50; ++k) {
      Potential w = random_potential(cq.q, 5, 1 + rng() % 4, rng);
      v.require(sum_commutator(w).is_zero(), cq.name);
      ++count;
    }
  v.detail << count << " potentials";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Verdict&)>> criteria = {
      {"codimension of commutator spaces", codimension},
      {"Lambda_mu tangent rank and isotropy", lambda_components},
      {"d^2 = 0 over the corpus", d_squared},
      {"truncation equations", truncation},
      {"preprojective relations", preprojective},
      {"Calabi-Yau cocycle", cy_cocycle},
      {"HH0 against necklaces", hh0},
      {"tangent complex self-duality", self_duality},
      {"gradient of tr W", gradient},
      {"saturation components", saturation},
      {"cyclic identity", cyclic_identity},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    all = all && v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << v.detail.str()
              << ")" << std::endl;
  }
  return all ? 0 : 1;
}
