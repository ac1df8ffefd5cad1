#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdg/ncpoly.hpp"
#include "qdg/quiver.hpp"

namespace qdg {

std::string loop_generator(const std::string& v);        // x_v, degree -1
std::string double_loop_generator(const std::string& v);  // x'_v, degree -2

// Free graded quiver algebra with a differential on generators. The graded
// quiver's arrows are the generators; their `degree` field is the cohomological degree.
class DgPresentation {
 public:
  // Validates degrees (<= 0), endpoints and homogeneity of every d(g).
  DgPresentation(std::string name, QuiverPtr graded, std::map<std::string, NCPolynomial> diff,
                 std::map<std::string, int> display_sign = {});

  const std::string& name() const { return name_; }
  const QuiverPtr& algebra() const { return q_; }
  const std::vector<Edge>& generators() const { return q_->edges(); }
  std::vector<std::string> generators_of_degree(int degree) const;

  // Zero when no differential was assigned.
  NCPolynomial d(const std::string& gen) const;
  const std::map<std::string, NCPolynomial>& differential() const { return diff_; }

  // +1 or -1; the sign used when d(gen) is printed as an equation.
  int display_sign(const std::string& gen) const;

  // Copy with one differential replaced; endpoint and degree checks still apply.
  DgPresentation with_differential(const std::string& gen, NCPolynomial value) const;

 private:
  std::string name_;
  QuiverPtr q_;
  std::map<std::string, NCPolynomial> diff_;
  std::map<std::string, int> display_sign_;
};

// kQ itself: all generators in degree 0, no differential.
DgPresentation path_algebra(const Quiver& q);
DgPresentation ginzburg2(const Quiver& q);
DgPresentation ginzburg3(const Potential& w);
DgPresentation relative_ginzburg2(const Quiver& d, const Quiver& q);
DgPresentation relative_ginzburg3(const Quiver& q, const Quiver& d, const Potential& w);

// Graded Leibniz rule d(pq) = d(p)q + (-1)^{|p|} p d(q). Throws on non-homogeneous input.
NCPolynomial leibniz_extend(const DgPresentation& p, const NCPolynomial& x);

struct DSquaredFailure {
  std::string generator;
  NCPolynomial residual;
};

struct DSquaredReport {
  bool pass = true;
  std::size_t generators_checked = 0;
  std::vector<DSquaredFailure> failures;
};

DSquaredReport check_d_squared(const DgPresentation& p);

// d(g) for every degree -1 generator g, in generator order.
std::vector<NCPolynomial> h0_relations(const DgPresentation& p);

// Degree -1 generators g for which some degree -2 generator h has d(h) = +-g + (terms
// without g); the relation d(g) then lies in the ideal of the other relations.
std::map<std::string, std::string> implied_relations(const DgPresentation& p);

// Text table: generator, degree, endpoints, differential.
std::string presentation_table(const DgPresentation& p);

std::string presentation_json(const DgPresentation& p);
DgPresentation parse_presentation_json(const std::string& text);

}  // namespace qdg
