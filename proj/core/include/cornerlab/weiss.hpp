#pragma once

// Weiss adjusted boundary energy about a stagnation point and its remainder.
//
//   M(r) = r^{2k} int_{B_r} (|grad u|^2 + w chi) + k r^{2k-1} int_{dB_r} u^2
//   h(r) = r^{2k-1} int_{B_r} (grad w . (X - X0) + (2k + 2) w) chi
//
// with k = kappa. M - int_0^r h is non-decreasing for weak solutions. The
// remainder vanishes when w is homogeneous about X0 (Type 3, or a zero
// exponent on the non-degenerate axis).

#include <optional>
#include <string>
#include <vector>

#include "cornerlab/domain.hpp"
#include "cornerlab/integration.hpp"

namespace cornerlab {

struct WeissProfile {
  std::vector<double> radii;
  std::vector<double> M;
  std::vector<double> dM_numeric;
  std::vector<double> remainder;
  std::vector<double> remainder_integral;
  std::vector<double> J1;

  std::string to_csv() const;
};

double weiss_energy(const ProblemSpec& spec, const Reconstruction& rec,
                    const StagnationPoint& sp, double r);
double weiss_energy(const ProblemSpec& spec, const ScalarField& u,
                    const StagnationPoint& sp, double r);

double remainder(const ProblemSpec& spec, const Reconstruction& rec,
                 const StagnationPoint& sp, double r);
double remainder(const ProblemSpec& spec, const ScalarField& u,
                 const StagnationPoint& sp, double r);

/// r^{2k-1} int_{dB_r} u^2.
double boundary_moment(const Reconstruction& rec, const StagnationPoint& sp, double r);

/// True if the remainder integrand is identically zero for this spec.
bool remainder_vanishes(const ProblemSpec& spec);

/// Cumulative int_0^{r_i} h: trapezoid between samples plus h(r_0) r_0.
std::vector<double> cumulative_remainder(const std::vector<double>& radii,
                                         const std::vector<double>& h);

/// radii must be strictly increasing inside (0, delta).
WeissProfile weiss_profile(const ProblemSpec& spec, const ScalarField& u,
                           const StagnationPoint& sp, const std::vector<double>& radii);

struct MonotonicityReport {
  bool pass = true;
  double worst_violation = 0.0;  ///< largest decrease over both sequences
  int worst_index = -1;          ///< first radius of the worst adjacent pair
  bool worst_in_J1 = false;
  std::vector<int> M_violations;   ///< pairs where M - int h drops by > tol
  std::vector<int> J1_violations;  ///< pairs where J1 drops by > tol
};

MonotonicityReport check_monotonicity(const WeissProfile& profile, double tol);

/// Weight mass of the rescaled positivity set on the unit ball, using the
/// weight frozen at X0 (prefactor included).
double limit_density(const ProblemSpec& spec, const ScalarField& u,
                     const StagnationPoint& sp, double r_small);

std::vector<double> log_spaced(double r_min, double r_max, int count);

}  // namespace cornerlab
