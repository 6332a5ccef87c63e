#pragma once

// Frequency function about a flat-candidate stagnation point:
//   D = r int_{B_r} |grad u|^2 / Q,   Q = int_{dB_r} u^2
//   V = (V1 + V2) / Q,   H = D - V
//   V1 = r int_{B_r} w_ref (1 - chi)
//   V2 = r int_{B_r} (w_ref - w) chi + r^p int_0^r h
// w_ref is the weight frozen at X0 (for Type 3 the weight itself), h the
// Weiss remainder. The stored V1, V2 are already divided by Q.

#include <string>
#include <vector>

#include "cornerlab/domain.hpp"

namespace cornerlab {

/// How the remainder integral enters V2. `Scaled` uses p = 1 - 2 kappa, the
/// power that makes H = (M - int h - M(0+)) / J1 an identity; `AsPrinted`
/// uses p = -2 kappa; `Off` drops the term.
enum class RemainderMode { Scaled, AsPrinted, Off };

RemainderMode remainder_mode_from_string(const std::string& s);
std::string to_string(RemainderMode m);

struct FrequencyProfile {
  std::vector<double> radii;
  std::vector<double> D;
  std::vector<double> V;
  std::vector<double> V1;
  std::vector<double> V2;
  std::vector<double> H;
  std::vector<double> remainder_term;  ///< the r^p int h part of V2, over Q

  std::string to_csv() const;
};

/// radii strictly increasing inside (0, delta). Throws DegenerateDenominator
/// when u vanishes on a sampled circle.
FrequencyProfile frequency_profile(const ProblemSpec& spec, const ScalarField& u,
                                   const StagnationPoint& sp,
                                   const std::vector<double>& radii,
                                   RemainderMode mode = RemainderMode::Scaled);

struct FrequencyBoundReport {
  bool pass = true;
  double bound = 0.0;
  double min_H = 0.0;
  std::vector<int> violations;
};

/// Flags radii with H < exponent/2 + 1 - tol (exponent is beta for Type 1,
/// alpha for Type 2 and alpha + beta for Type 3).
FrequencyBoundReport check_frequency_bound(const FrequencyProfile& profile,
                                           double exponent, double tol);

/// The exponent entering the frequency bound for this spec.
double frequency_exponent(const ProblemSpec& spec);

}  // namespace cornerlab
