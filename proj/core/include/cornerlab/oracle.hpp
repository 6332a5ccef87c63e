#pragma once

// Exact evaluators for the explicit blow-up limits, their weighted densities
// and the Case 3 angle-pair condition.
//
// All profiles live in the blow-up frame (origin at X0). A profile is
//   u0(r, theta) = prefactor * C0 * r^k * cos(k*theta + phi0)
// on the cone theta1 < theta < theta2 and zero elsewhere, with
// theta2 - theta1 = pi/k.

#include <optional>
#include <vector>

#include "cornerlab/domain.hpp"

namespace cornerlab {

struct AnglePair {
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool symmetric = false;

  double bisector() const { return 0.5 * (theta1 + theta2); }
};

struct ClosedFormProfile {
  double degree = 0.0;
  double C0 = 0.0;
  double phi0 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double prefactor = 1.0;  ///< sqrt of the frozen weight factor at X0

  double bisector() const { return 0.5 * (theta1 + theta2); }
  double opening() const { return theta2 - theta1; }
};

/// |cos t|^alpha |sin t|^beta.
double weight_angle(double theta, double alpha, double beta);

/// Frozen weight of the spec at X0 + (cos t, sin t), divided by the
/// prefactor^2; this is the angular weight the blow-up limit sees.
double angular_weight(const ProblemSpec& spec, double theta);

/// C times the frozen non-degenerate factor at X0 (the density prefactor).
double density_prefactor(const ProblemSpec& spec);

/// Direction of the cone bisector for Types 1 and 2.
double predicted_bisector(const ProblemSpec& spec);

/// Types 1 and 2 take no pair; Type 3 requires one (InvalidSpec otherwise).
ClosedFormProfile blowup_limit(const ProblemSpec& spec,
                               std::optional<AnglePair> pair = {});

double evaluate_blowup_limit(const ClosedFormProfile& p, double r, double theta);
/// X is relative to the stagnation point.
double evaluate_blowup_limit(const ClosedFormProfile& p, Vec2 X);
Vec2 blowup_limit_gradient(const ClosedFormProfile& p, Vec2 X);

/// prefactor^2/(2k) * integral of angular_weight over (theta1, theta2).
double corner_density(const ProblemSpec& spec, double theta1, double theta2);
double full_ball_density(const ProblemSpec& spec);

/// |cos A - s sin A|^alpha |cos A + sin A / s|^beta - 1, A = 2pi/(alpha+beta+2).
double angle_condition_H(double s, double alpha, double beta);

double pair_opening(double alpha, double beta);

/// 8 or 12 per the tan A threshold (alpha == beta gives 8).
int expected_pair_count(double alpha, double beta);

/// alpha == beta == 1: every theta1 solves the condition.
bool angle_condition_degenerate(double alpha, double beta);

/// Roots theta1 in [-pi, pi) of |cos(t+A)|^a|sin(t+A)|^b = |cos t|^a|sin t|^b
/// with a nonzero weight at the edges. For the degenerate family the
/// limiting set of 8 pairs (bisectors at multiples of pi/4) is returned.
std::vector<AnglePair> solve_angle_pairs(double alpha, double beta);

struct TschebysheffCoefficients {
  double a = 0.0;
  double b = 0.0;
  double C0 = 0.0;
  double phi0 = 0.0;
};

/// Angular part g = a cos(k t) + b sin(k t) of the velocity potential with
/// g'(theta1) = g'(theta1 + pi/k) = 0 and k^2 (a^2 + b^2) equal to the edge
/// weight. Throws InvalidPair when theta1 is not admissible.
TschebysheffCoefficients tschebysheff_coefficients(double theta1, double alpha,
                                                   double beta);

/// Wraps to (-pi, pi].
double wrap_angle(double t);

}  // namespace cornerlab
