#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qdg/dg.hpp"
#include "qdg/matrix.hpp"
#include "qdg/ncpoly.hpp"
#include "qdg/quiver.hpp"

namespace qdg {

// Matrices on the degree-0 arrows of a quiver. Row-vector convention: rho(e) is
// n_src x n_tgt and a path f1...fL evaluates to rho(f1)...rho(fL), so that path
// concatenation and matrix products are read in the same order.
template <class T>
struct MatrixRep {
  QuiverPtr quiver;
  DimensionVector dims;
  std::map<std::string, Matrix<T>> mats;

  const Matrix<T>& at(const std::string& id) const;
  int dim(const std::string& vertex) const;
};

using RepQ = MatrixRep<Rational>;
using RepD = MatrixRep<double>;

// Checks that every degree-0 arrow has a matrix of the right shape.
template <class T>
void validate_rep(const MatrixRep<T>& rho);

RepQ random_rep_q(QuiverPtr q, const DimensionVector& dims, std::mt19937_64& rng, int bound = 3);
RepD random_rep_d(QuiverPtr q, const DimensionVector& dims, std::mt19937_64& rng);
RepD to_double(const RepQ& rho);

// g_v rho(e) g_w^{-1} for e: v -> w.
RepQ conjugate(const RepQ& rho, const std::map<std::string, MatQ>& g);

// p may live in any quiver sharing arrow ids with rho's quiver; arrows of nonzero
// degree evaluate to 0. The endpoint-free overload infers them from the terms.
template <class T>
Matrix<T> evaluate(const NCPolynomial& p, const MatrixRep<T>& rho);
template <class T>
Matrix<T> evaluate(const NCPolynomial& p, const MatrixRep<T>& rho, const std::string& src,
                   const std::string& tgt);

// sum over arrows e of Q with e* present: e_v (e e* - e* e) e_v, evaluated.
template <class T>
Matrix<T> moment_map(const MatrixRep<T>& rho, const std::string& vertex);

struct Equation {
  std::string generator;
  NCPolynomial lhs;  // the equation is lhs = 0
  std::string src;
  std::string tgt;
  int display_sign = 1;
  std::optional<std::string> implied_by;
};

struct PolySystem {
  QuiverPtr algebra;
  DimensionVector dims;
  std::vector<std::string> variables;
  std::vector<Equation> equations;
};

PolySystem truncation_equations(const DgPresentation& p, const DimensionVector& dims);

// Subscript rendering, e.g. "x_bx_c = x_{a*}" or "[x_b,x_c] = x_{a*}".
std::string format_equation(const Equation& eq);
std::string format_system(const PolySystem& s, bool include_implied);
std::string variable_name(const std::string& id);

template <class T>
double residual(const PolySystem& s, const MatrixRep<T>& rho);

// Linearization over all variable entries (row-major per variable, variables in order).
template <class T>
Matrix<T> jacobian(const PolySystem& s, const MatrixRep<T>& rho);

std::size_t jacobian_rank(const PolySystem& s, const RepQ& rho);
std::size_t jacobian_rank(const PolySystem& s, const RepD& rho, double tol = 1e-8,
                          double residual_tol = 1e-10);

// Gradient of rho -> tr(W(rho)): for each arrow e, evaluate(dW/de)^T.
template <class T>
std::map<std::string, Matrix<T>> potential_gradient(const Potential& w, const MatrixRep<T>& rho);

std::map<std::string, MatD> finite_difference_gradient(const Potential& w, const RepD& rho,
                                                       double h = 1e-6);

template <class T>
T trace_of_potential(const Potential& w, const MatrixRep<T>& rho);

// gl(n) --A--> T Rep(Qbar) --B--> gl(n) at a zero of the moment map. T is
// coordinatized by the arrows of Qbar in quiver order, gl(n) by vertices in order.
template <class T>
struct TangentComplex {
  Matrix<T> A;
  Matrix<T> B;
  Matrix<T> gl_pairing;  // <b,a> = sum_v tr(b_v a_v) = b^T G a
  Matrix<T> omega;       // omega(u,v) = sum_e tr(u_e v_e* - u_e* v_e) = u^T W v
};

template <class T>
TangentComplex<T> tangent_complex_g2(const MatrixRep<T>& rho, double tol = 1e-10);

// Max entry of B A and of B^T G - Omega^T A (the trace-duality defect).
template <class T>
double composition_defect(const TangentComplex<T>& c);
template <class T>
double duality_defect(const TangentComplex<T>& c);

// Commuting pair on the doubled Jordan quiver (arrows a, a*): x random and
// x* a random polynomial in x, or the other way round, then conjugated.
RepQ sample_commuting_rep(int n, std::mt19937_64& rng);

QuiverPtr doubled_jordan();

}  // namespace qdg
