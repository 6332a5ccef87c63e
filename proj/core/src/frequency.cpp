#include "cornerlab/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cornerlab/errors.hpp"
#include "cornerlab/field_io.hpp"
#include "cornerlab/integration.hpp"
#include "cornerlab/weiss.hpp"

namespace cornerlab {

RemainderMode remainder_mode_from_string(const std::string& s) {
  if (s == "scaled") return RemainderMode::Scaled;
  if (s == "as_printed") return RemainderMode::AsPrinted;
  if (s == "off") return RemainderMode::Off;
  throw ConfigError("remainder mode must be scaled, as_printed or off");
}

std::string to_string(RemainderMode m) {
  switch (m) {
    case RemainderMode::Scaled: return "scaled";
    case RemainderMode::AsPrinted: return "as_printed";
    case RemainderMode::Off: return "off";
  }
  return "?";
}

double frequency_exponent(const ProblemSpec& spec) {
  return 2.0 * homogeneity_degree(spec) - 2.0;
}

FrequencyProfile frequency_profile(const ProblemSpec& spec, const ScalarField& u,
                                   const StagnationPoint& sp,
                                   const std::vector<double>& radii, RemainderMode mode) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw RadiusOutOfRange("radii must be strictly increasing", radii[i]);
  const Reconstruction rec(u);
  const Point x0 = sp.location;

  std::vector<double> h;
  for (double r : radii) h.push_back(remainder(spec, rec, sp, r));
  const std::vector<double> Ih = cumulative_remainder(radii, h);

  FrequencyProfile p;
  p.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    const double Q = integrate_circle(rec, x0, r, [](const Sample& s) { return s.value * s.value; });
    if (!(Q > 1e-300) || !std::isfinite(Q))
      throw DegenerateDenominator("u vanishes on the sampled circle", r);
    double grad2 = 0.0, v1 = 0.0, v2 = 0.0;
    grad2 = integrate_disk(rec, x0, r, [](const Sample& s) {
      return s.positive ? norm2(s.grad) : 0.0;
    });
    v1 = integrate_disk(rec, x0, r, [&](const Sample& s) {
      return s.positive ? 0.0 : frozen_weight_at(spec, s.X);
    });
    v2 = integrate_disk(rec, x0, r, [&](const Sample& s) {
      return s.positive ? frozen_weight_at(spec, s.X) - weight_at(spec, s.X) : 0.0;
    });
    double rem = 0.0;
    switch (mode) {
      case RemainderMode::Scaled: rem = std::pow(r, 1.0 - 2.0 * sp.kappa) * Ih[i]; break;
      case RemainderMode::AsPrinted: rem = std::pow(r, -2.0 * sp.kappa) * Ih[i]; break;
      case RemainderMode::Off: break;
    }
    const double D = r * grad2 / Q;
    const double V1 = r * v1 / Q;
    const double V2 = (r * v2 + rem) / Q;
    p.D.push_back(D);
    p.V1.push_back(V1);
    p.V2.push_back(V2);
    p.V.push_back(V1 + V2);
    p.H.push_back(D - (V1 + V2));
    p.remainder_term.push_back(rem / Q);
  }
  return p;
}

std::string FrequencyProfile::to_csv() const {
  std::ostringstream os;
  os << "r,D,V1,V2,V,H\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    os << format_real(radii[i]) << ',' << format_real(D[i]) << ',' << format_real(V1[i])
       << ',' << format_real(V2[i]) << ',' << format_real(V[i]) << ','
       << format_real(H[i]) << '\n';
  return os.str();
}

FrequencyBoundReport check_frequency_bound(const FrequencyProfile& profile,
                                           double exponent, double tol) {
  FrequencyBoundReport rep;
  rep.bound = exponent / 2.0 + 1.0;
  rep.min_H = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < profile.H.size(); ++i) {
    rep.min_H = std::min(rep.min_H, profile.H[i]);
    if (profile.H[i] < rep.bound - tol) rep.violations.push_back(int(i));
  }
  rep.pass = rep.violations.empty();
  return rep;
}

}  // namespace cornerlab
