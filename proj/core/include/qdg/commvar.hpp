#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qdg/exact_linalg.hpp"
#include "qdg/matrix.hpp"
#include "qdg/partition.hpp"

namespace qdg {

struct JordanBlock {
  Rational eigenvalue;
  Partition type;
};
// Eigenvalues pairwise distinct.
using JordanSpec = std::vector<JordanBlock>;

void validate_jordan_spec(const JordanSpec& spec);
int jordan_size(const JordanSpec& spec);
std::string to_string(const JordanSpec& spec);
// "0:2,1" or "0:2,1;1/2:1" (eigenvalue:type, blocks separated by ';').
JordanSpec parse_jordan_spec(const std::string& text);

// Upper Jordan blocks J_{lambda_1}, J_{lambda_2}, ... per eigenvalue.
MatQ jordan_matrix(const JordanSpec& spec);
MatQ jordan_matrix(const Partition& nilpotent_type);
// Nilpotent of type lambda in a basis adapted to iterated kernels: blocks of sizes
// lambda'_1, ..., lambda'_s with I_{k,k+1} (entries delta_ij) above the diagonal.
MatQ iterated_kernel_jordan(const Partition& lambda);

std::vector<MatQ> centralizer_basis(const MatQ& x);
// Basis of the span of [b_i, b_j] over centralizer basis pairs.
std::vector<MatQ> commutator_space(const MatQ& x);
std::vector<MatQ> commutator_space(const std::vector<MatQ>& centralizer);

struct CodimReport {
  std::size_t centralizer_dim = 0;
  std::size_t commutator_dim = 0;
  std::size_t predicted_codim = 0;
  bool pass = false;
};
CodimReport codim_theorem_check(const JordanSpec& spec);

// Per-trial outcome of writing t = [y, z] with y, z in the centralizer.
enum class Certificate { Exact, Numeric, Inconclusive };
std::string to_string(Certificate c);

struct CommutatorSolve {
  Certificate certificate = Certificate::Inconclusive;
  MatQ y, z;          // exact witness
  MatD y_num, z_num;  // float witness
  double residual = 0;  // |[y_num, z_num] - t| / |t| for numeric witnesses
};
// Exact attempts with random y first, then damped Gauss-Newton on the coefficients.
CommutatorSolve solve_commutator(const MatQ& x, const MatQ& t, std::mt19937_64& rng,
                                 double tol = 1e-8);

struct SetSpanReport {
  std::size_t trials = 0;
  std::size_t exact = 0;
  std::size_t numeric = 0;
  std::size_t inconclusive = 0;
  double max_residual = 0;
  bool all_succeeded() const { return inconclusive == 0; }
};
SetSpanReport commutator_set_equals_span(const MatQ& x, std::size_t trials, std::uint64_t seed,
                                         double tol = 1e-8);

bool lambda_membership(const MatQ& x, const MatQ& t);

using TangentPair = std::pair<MatQ, MatQ>;

struct LambdaMuSample {
  Partition mu;
  std::vector<Rational> eigenvalues;
  MatQ g;  // conjugating matrix
  MatQ x, t;
  std::vector<TangentPair> frame;
};
LambdaMuSample sample_lambda_mu(const Partition& mu, std::uint64_t seed, bool conjugate_point = true);

// Pairing tr(dx dt' - dt dx').
Rational omega(const TangentPair& u, const TangentPair& v);
std::size_t frame_rank(const std::vector<TangentPair>& frame);
std::size_t frame_rank_numeric(const std::vector<TangentPair>& frame, double rel_tol = 1e-8);
Rational isotropy_exact(const std::vector<TangentPair>& frame);
double isotropy_check(const std::vector<TangentPair>& frame);

// Diagonal blocks (k-1) eps added to iterated_kernel_jordan(lambda).
MatQ degeneration_xeps(const Partition& lambda, const Rational& eps);

struct DegenerationReport {
  bool intertwining = false;     // x(e) exp(x/e) = exp(x/e) (x(e) - x)
  bool minimal_polynomial = false;  // prod_k (x(e) - k e) = 0
  bool spectrum = false;         // eigenvalue (k-1) e with multiplicity lambda'_k
  bool same_type = false;        // iterated_kernel_jordan(lambda) ~ jordan_matrix(lambda)
  double limit_gap = 0;          // max |x(e) - x|
};
DegenerationReport check_degeneration(const Partition& lambda, const Rational& eps);

// Frobenius distance from y to commutator_space(x), by least squares.
double commutator_space_distance(const MatQ& x, const MatQ& y);

}  // namespace qdg
