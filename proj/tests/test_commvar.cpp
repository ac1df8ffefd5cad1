#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qdg/commvar.hpp"
#include "qdg/errors.hpp"

using namespace qdg;

namespace {

MatQ block_diag2(const MatQ& a, const MatQ& b) { return block_diagonal(std::vector<MatQ>{a, b}); }

}  // namespace

TEST_SUITE("commvar") {
  TEST_CASE("Jordan matrices") {
    MatQ j = jordan_matrix(Partition{3});
    CHECK(j(0, 1) == 1);
    CHECK(j(1, 2) == 1);
    CHECK(rank(j) == 2);
    CHECK(jordan_matrix(Partition{1, 1, 1}).is_zero_matrix());
    MatQ j21 = jordan_matrix(Partition{2, 1});
    CHECK(rank(j21) == 1);
    int ones = 0;
    for (const auto& v : j21.data()) ones += v == 1;
    CHECK(ones == 1);
    JordanSpec s = parse_jordan_spec("1/2:2;3:1");
    CHECK(jordan_size(s) == 3);
    CHECK(jordan_matrix(s)(0, 0) == Rational(1, 2));
    CHECK(jordan_matrix(s)(2, 2) == 3);
    CHECK(to_string(s) == "1/2:2;3:1");
    CHECK_THROWS_AS(parse_jordan_spec("0:1;0:1"), InputError);
  }

  TEST_CASE("centralizer dimensions") {
    CHECK(centralizer_basis(MatQ(3, 3)).size() == 9);
    CHECK(centralizer_basis(jordan_matrix(Partition{3})).size() == 3);
    CHECK(centralizer_basis(jordan_matrix(Partition{2, 1})).size() == 5);
    for (int n = 1; n <= 5; ++n)
      for (const auto& l : partitions(n)) {
        CHECK(centralizer_basis(jordan_matrix(l)).size() == oracle::centralizer_dim(l));
        CHECK(centralizer_basis(iterated_kernel_jordan(l)).size() == oracle::centralizer_dim(l));
      }
  }

  TEST_CASE("centralizer elements commute") {
    MatQ x = jordan_matrix(parse_jordan_spec("0:2,1;2:2"));
    for (const auto& b : centralizer_basis(x)) CHECK(commutator(x, b).is_zero_matrix());
  }

  TEST_CASE("commutator space dimensions") {
    CHECK(commutator_space(MatQ(3, 3)).size() == 8);
    CHECK(commutator_space(jordan_matrix(Partition{3})).empty());
    CHECK(commutator_space(jordan_matrix(Partition{2, 1})).size() == 3);
  }

  TEST_CASE("codimension equals the largest part") {
    for (int n = 1; n <= 6; ++n)
      for (const auto& l : partitions(n)) {
        CodimReport r = codim_theorem_check({{0, l}});
        CHECK(r.pass);
        CHECK(r.centralizer_dim - r.commutator_dim == static_cast<std::size_t>(l[0]));
      }
    CodimReport two = codim_theorem_check({{0, {2}}, {1, {1}}});
    CHECK(two.pass);
    CHECK(two.centralizer_dim - two.commutator_dim == 3);
    CodimReport zero = codim_theorem_check({{0, {1, 1, 1}}});
    CHECK(zero.centralizer_dim - zero.commutator_dim == 1);
  }

  TEST_CASE("commutator spaces add over distinct eigenvalues") {
    for (int n1 = 1; n1 <= 3; ++n1)
      for (int n2 = 1; n2 <= 3; ++n2)
        for (const auto& l1 : partitions(n1))
          for (const auto& l2 : partitions(n2)) {
            MatQ a = jordan_matrix(l1), b = jordan_matrix(JordanSpec{{5, l2}});
            CHECK(commutator_space(block_diag2(a, b)).size() ==
                  commutator_space(a).size() + commutator_space(b).size());
          }
  }

  TEST_CASE("single commutators fill the span") {
    SetSpanReport reg = commutator_set_equals_span(jordan_matrix(Partition{4}), 5, 1);
    CHECK(reg.all_succeeded());
    SetSpanReport zero = commutator_set_equals_span(MatQ(3, 3), 10, 2);
    CHECK(zero.all_succeeded());
    CHECK(zero.inconclusive == 0);
    SetSpanReport r = commutator_set_equals_span(jordan_matrix(Partition{2, 1}), 20, 3);
    CHECK(r.trials == 20);
    CHECK(r.all_succeeded());
    CHECK(r.max_residual <= 1e-8);
  }

  TEST_CASE("solved commutators are certified") {
    std::mt19937_64 rng(4);
    MatQ x = jordan_matrix(Partition{3, 1});
    auto space = commutator_space(x);
    for (int t = 0; t < 5; ++t) {
      MatQ target(4, 4);
      for (const auto& b : space) target += b * random_rational(rng, 3);
      CommutatorSolve s = solve_commutator(x, target, rng);
      if (s.certificate == Certificate::Exact) {
        CHECK(commutator(s.y, s.z) == target);
        CHECK(commutator(x, s.y).is_zero_matrix());
        CHECK(commutator(x, s.z).is_zero_matrix());
      } else {
        CHECK(s.certificate == Certificate::Numeric);
        CHECK(s.residual <= 1e-8);
      }
    }
  }

  TEST_CASE("membership in Lambda_n") {
    std::mt19937_64 rng(5);
    MatQ x = random_matrix(3, 3, rng);
    CHECK(lambda_membership(x, MatQ(3, 3)));
    MatQ t = random_matrix(3, 3, rng);
    t(0, 0) -= t.trace();
    CHECK(lambda_membership(MatQ(3, 3), t));
    MatQ u = t;
    u(1, 1) += 1;
    CHECK_FALSE(lambda_membership(MatQ(3, 3), u));
    MatQ reg = jordan_matrix(Partition{3});
    CHECK_FALSE(lambda_membership(reg, reg));
    CHECK_THROWS_AS(lambda_membership(reg, MatQ(2, 2)), InputError);

    for (int n = 2; n <= 4; ++n)
      for (const auto& l : partitions(n)) {
        MatQ xl = jordan_matrix(l);
        auto c = centralizer_basis(xl);
        MatQ y(static_cast<std::size_t>(n), static_cast<std::size_t>(n)), z = y;
        for (const auto& b : c) {
          y += b * random_rational(rng, 3);
          z += b * random_rational(rng, 3);
        }
        CHECK(lambda_membership(xl, commutator(y, z)));
      }
  }

  TEST_CASE("Lambda_mu samples") {
    for (int n = 1; n <= 4; ++n)
      for (const auto& mu : partitions(n))
        for (std::uint64_t seed : {1u, 2u}) {
          LambdaMuSample s = sample_lambda_mu(mu, seed);
          CHECK(frame_rank(s.frame) == static_cast<std::size_t>(n * n));
          CHECK(frame_rank_numeric(s.frame) == static_cast<std::size_t>(n * n));
          CHECK(isotropy_exact(s.frame) == 0);
          CHECK(isotropy_check(s.frame) <= 1e-8);
          CHECK(lambda_membership(s.x, s.t));
        }
  }

  TEST_CASE("regular semisimple and scalar samples") {
    LambdaMuSample rs = sample_lambda_mu({1, 1, 1}, 7, false);
    CHECK(rs.t.is_zero_matrix());
    LambdaMuSample sc = sample_lambda_mu({3}, 7, false);
    std::mt19937_64 rng(1);
    CHECK(commutator(sc.x, random_matrix(3, 3, rng)).is_zero_matrix());
    CHECK(sc.t.trace() == 0);
  }

  TEST_CASE("symplectic pairing controls") {
    MatQ e = MatQ::unit(2, 2, 0, 0), z(2, 2);
    CHECK(omega({e, z}, {z, e}) == 1);
    CHECK(omega({e, z}, {e, z}) == 0);
    std::mt19937_64 rng(6);
    std::vector<TangentPair> zero_section;
    for (int k = 0; k < 4; ++k) zero_section.push_back({random_matrix(2, 2, rng), z});
    CHECK(isotropy_exact(zero_section) == 0);
    std::vector<TangentPair> bad{{e, z}, {z, e}};
    CHECK(isotropy_check(bad) == doctest::Approx(1.0));
  }

  TEST_CASE("degeneration") {
    for (int n = 1; n <= 4; ++n)
      for (const auto& l : partitions(n)) {
        DegenerationReport r = check_degeneration(l, Rational(1, 3));
        CHECK(r.intertwining);
        CHECK(r.minimal_polynomial);
        CHECK(r.spectrum);
        CHECK(r.same_type);
        DegenerationReport half = check_degeneration(l, Rational(1, 6));
        CHECK(half.limit_gap == doctest::Approx(r.limit_gap / 2));
      }
    auto ev = rational_eigenvalues(degeneration_xeps({4}, Rational(1, 5)));
    std::vector<std::pair<Rational, int>> expected{{0, 1}, {Rational(1, 5), 1}, {Rational(2, 5), 1}, {Rational(3, 5), 1}};
    CHECK(ev == expected);
    CHECK_THROWS_AS(degeneration_xeps({2, 1}, 0), InputError);
  }

  TEST_CASE("commutators of the limit are approached") {
    std::mt19937_64 rng(7);
    Partition l{2, 1};
    auto space = commutator_space(iterated_kernel_jordan(l));
    MatQ y(3, 3);
    for (const auto& b : space) y += b * random_rational(rng, 3);
    double prev = commutator_space_distance(degeneration_xeps(l, Rational(1, 2)), y);
    double first = prev;
    Rational e(1, 2);
    for (int k = 0; k < 6; ++k) {
      e /= 2;
      double d = commutator_space_distance(degeneration_xeps(l, e), y);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
    CHECK(prev <= first / 16);
  }
}
