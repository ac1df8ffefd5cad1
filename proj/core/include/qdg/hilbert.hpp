#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qdg/commvar.hpp"
#include "qdg/matrix.hpp"
#include "qdg/partition.hpp"

namespace qdg {

// (x, x*, v, v*) with v an n x 1 column and v* a 1 x n row.
template <class T>
struct ADHMDatum {
  Matrix<T> x, xs, v, vs;

  std::size_t n() const { return x.rows(); }
};
using ADHMQ = ADHMDatum<Rational>;
using ADHMD = ADHMDatum<double>;

template <class T>
void validate_adhm(const ADHMDatum<T>& d) {
  std::size_t n = d.x.rows();
  if (d.x.cols() != n || d.xs.rows() != n || d.xs.cols() != n || d.v.rows() != n || d.v.cols() != 1 ||
      d.vs.rows() != 1 || d.vs.cols() != n)
    throw InputError("ADHM datum shapes inconsistent: x " + d.x.shape() + ", x* " + d.xs.shape() + ", v " +
                     d.v.shape() + ", v* " + d.vs.shape());
}

// [x, x*] + v v*
template <class T>
Matrix<T> framed_moment(const ADHMDatum<T>& d) {
  validate_adhm(d);
  return commutator(d.x, d.xs) + d.v * d.vs;
}

ADHMD to_double(const ADHMQ& d);
ADHMQ conjugate(const ADHMQ& d, const MatQ& g);

// C<x, x*>.v = C^n; exact Krylov closure.
bool stability_check(const MatQ& x, const MatQ& xs, const MatQ& v);
// Rank of the Krylov matrix over words of length <= 2n - 2.
bool stability_check(const MatD& x, const MatD& xs, const MatD& v, double rel_tol = 1e-8);

// Requires |framed_moment| <= tol and stability (PreconditionError otherwise);
// returns |v*| <= tol (1 + |d|).
bool stable_zero_fiber_check(const ADHMD& d, double tol = 1e-8);
// One minimum-norm Gauss-Newton step towards framed_moment = 0.
ADHMD project_to_zero_fiber(const ADHMD& d);

using PlanePoint = std::pair<Rational, Rational>;
// Sorted multiset.
using PlanePoints = std::vector<PlanePoint>;
using PlanePointD = std::pair<double, double>;

// Joint spectrum of commuting (x, x*); eigenvalues must be rational.
PlanePoints hilbert_chow(const MatQ& x, const MatQ& xs);
// Clusters eigenvalues of a random combination a x + b x* (gap heuristic) and reads off
// each point from traces on the generalized eigenspace.
std::vector<PlanePointD> hilbert_chow(const MatD& x, const MatD& xs, std::uint64_t seed = 0,
                                      double tol = 1e-8, double cluster_tol = 1e-3);

// Trace of x* on each generalized eigenspace of x, keyed by eigenvalue.
std::vector<std::pair<Rational, Rational>> ges_traces(const MatQ& x, const MatQ& xs);

bool lambda_n1_membership(const MatQ& x, const MatQ& xs, const MatQ& v);
bool saturation_membership(const MatQ& x, const MatQ& xs, const MatQ& v);

// First coordinates group (by equality) into blocks of sizes lambda, with zero
// second-coordinate sum per block.
bool stratum_test(const PlanePoints& pts, const Partition& lambda);
bool stratum_test(const std::vector<PlanePointD>& pts, const Partition& lambda, double tol = 1e-8);
// The unique lambda with stratum_test true, if any.
std::optional<Partition> stratum_of(const PlanePoints& pts);

struct ADHMTangent {
  MatQ dx, dxs, dv;
};

struct ComponentSample {
  NestedPartition mu;
  Partition stratum;
  std::vector<Rational> alphas;
  ADHMQ point;
  std::vector<ADHMTangent> frame;
};
ComponentSample sample_component(const NestedPartition& mu, std::uint64_t seed, bool conjugate_point = true);

// Rank in the (x, x*, v) directions.
std::size_t adhm_frame_rank(const std::vector<ADHMTangent>& frame);

}  // namespace qdg
