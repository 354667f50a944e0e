#pragma once

#include <lelong/common.hpp>
#include <lelong/convex_body.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lelong {

/// S = ch{0, e_1, e_1 + e_2, a e_2} on the unit bidisc at z = (1/R, R).
struct IntroReport {
  double a = 0.0;
  double radius = 1.0;
  double lhs = 0.0;           // V^S_K(z) = H_S(z) = a log R
  double rhs = 0.0;           // phi_S(V_D(z_1), V_D(z_2)) = log R
  double gap = 0.0;
  double expected_gap = 0.0;  // (1 - a) log R
  bool pass = false;
};

/// Requires 0 < a < 1 and R >= 1.
IntroReport intro_counterexample(double a, double radius);

struct WeightedWitness {
  Vector eta;
  std::vector<double> weights;            // q_j = -eta_j
  std::vector<ComplexVector> eval_points; // z_j with H_{S_j}(z_j) = eta_j
  std::string eta_source;                 // which candidate produced eta
  double lhs = 0.0;                       // V^S_{K,q}(z)
  double rhs = 0.0;                       // phi_T(V_{K_j,q_j}(z_j))
  double gap = 0.0;                       // phi_T(eta) + phi_T(-eta)
  double level_error = 0.0;               // max |H_{S_j}(z_j) - eta_j|
  double identity_error = 0.0;            // V_{K,q} vs V_K + phi_T(q) on a grid
  bool pass = false;
};

/// Unit polydisc factors. Throws NoWitness when T is a single point and
/// NotApplicable when some S_j is {0}.
WeightedWitness weighted_counterexample(const ProductStructure& ps);

struct NonmaximalityReport {
  std::vector<double> weights;
  double gap = 0.0;
  bool inconclusive = false;  // the given weights produced no gap
  bool retried = false;       // gap taken from weighted_counterexample instead
  std::string implication;
  bool pass = false;
};

/// With empty weights the witness weights are used.
NonmaximalityReport nonmaximality_note(const ProductStructure& ps, const std::vector<double>& weights = {});

struct SublevelWitness {
  int branch = 1;
  double t = 0.0;
  std::optional<double> t0;            // branch 1 only
  Vector axis_extents;
  Vector witness;                      // generator s of S
  std::vector<ComplexVector> points;
  ComplexVector midpoint;
  std::vector<double> values;          // H_S at the points
  double midpoint_value = 0.0;
  std::optional<double> excess_bound;  // (sum s_i/x_i - 1) t - (sum s_i) log n
  bool nonconvex = false;              // midpoint_value > t
  bool pass = false;                   // points in the sublevel set and nonconvex
  std::string note;
};

/// Refuses simplices with NotApplicable. `t` defaults to 1.1 t0 in branch 1
/// and to 1 in branch 2.
SublevelWitness sublevel_nonconvexity(const ConvexBody& body, std::optional<double> t = std::nullopt);

} // namespace lelong
