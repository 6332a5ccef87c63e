#include "cornerlab/weiss.hpp"

#include <cmath>
#include <sstream>

#include "cornerlab/errors.hpp"
#include "cornerlab/field_io.hpp"

namespace cornerlab {

namespace {

void require_radius(const Reconstruction& rec, const StagnationPoint& sp, double r) {
  if (!(r > 0.0) || !(r < sp.delta))
    throw RadiusOutOfRange("radius must lie in (0, delta)", r);
  if (!disk_inside_grid(rec.grid(), sp.location, r))
    throw RadiusOutOfRange("disk around the stagnation point leaves the grid", r);
}

}  // namespace

bool remainder_vanishes(const ProblemSpec& spec) {
  switch (spec.type()) {
    case 1: return spec.alpha == 0.0;
    case 2: return spec.beta == 0.0;
    default: return true;
  }
}

double boundary_moment(const Reconstruction& rec, const StagnationPoint& sp, double r) {
  const double q = integrate_circle(rec, sp.location, r,
                                    [](const Sample& s) { return s.value * s.value; });
  return std::pow(r, 2.0 * sp.kappa - 1.0) * q;
}

double weiss_energy(const ProblemSpec& spec, const Reconstruction& rec,
                    const StagnationPoint& sp, double r) {
  require_radius(rec, sp, r);
  const double bulk = integrate_disk(rec, sp.location, r, [&](const Sample& s) {
    return s.positive ? norm2(s.grad) + weight_at(spec, s.X) : 0.0;
  });
  return std::pow(r, 2.0 * sp.kappa) * bulk + sp.kappa * boundary_moment(rec, sp, r);
}

double weiss_energy(const ProblemSpec& spec, const ScalarField& u,
                    const StagnationPoint& sp, double r) {
  return weiss_energy(spec, Reconstruction(u), sp, r);
}

double remainder(const ProblemSpec& spec, const Reconstruction& rec,
                 const StagnationPoint& sp, double r) {
  require_radius(rec, sp, r);
  if (remainder_vanishes(spec)) return 0.0;
  const AxisSides sd = weight_sides(spec);
  const Point x0 = sp.location;
  const double C = spec.weight_constant;
  const double a = spec.alpha, b = spec.beta;
  const bool type1 = spec.type() == 1;
  const double I = integrate_disk(rec, x0, r, [&](const Sample& s) {
    if (!s.positive) return 0.0;
    const Point X = s.X;
    if (type1)
      return C * a * side_power(X.x, sd.x, a - 1.0) * sd.x * (X.x - x0.x) *
             side_power(X.y, sd.y, b);
    return C * b * side_power(X.y, sd.y, b - 1.0) * sd.y * (X.y - x0.y) *
           side_power(X.x, sd.x, a);
  });
  return std::pow(r, 2.0 * sp.kappa - 1.0) * I;
}

double remainder(const ProblemSpec& spec, const ScalarField& u,
                 const StagnationPoint& sp, double r) {
  return remainder(spec, Reconstruction(u), sp, r);
}

std::vector<double> cumulative_remainder(const std::vector<double>& radii,
                                         const std::vector<double>& h) {
  std::vector<double> out(radii.size(), 0.0);
  if (radii.empty()) return out;
  out[0] = h[0] * radii[0];
  for (std::size_t i = 1; i < radii.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (h[i] + h[i - 1]) * (radii[i] - radii[i - 1]);
  return out;
}

WeissProfile weiss_profile(const ProblemSpec& spec, const ScalarField& u,
                           const StagnationPoint& sp, const std::vector<double>& radii) {
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw RadiusOutOfRange("radii must be strictly increasing", radii[i]);
  const Reconstruction rec(u);
  WeissProfile p;
  p.radii = radii;
  for (double r : radii) {
    p.M.push_back(weiss_energy(spec, rec, sp, r));
    p.remainder.push_back(remainder(spec, rec, sp, r));
    p.J1.push_back(boundary_moment(rec, sp, r));
  }
  p.remainder_integral = cumulative_remainder(radii, p.remainder);

  const std::size_t n = radii.size();
  p.dM_numeric.assign(n, 0.0);
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
      const double dlog = std::log(radii[hi]) - std::log(radii[lo]);
      p.dM_numeric[i] = (p.M[hi] - p.M[lo]) / dlog / radii[i];
    }
  }
  return p;
}

std::string WeissProfile::to_csv() const {
  std::ostringstream os;
  os << "r,M,dM_numeric,remainder,remainder_integral,J1\n";
  for (std::size_t i = 0; i < radii.size(); ++i)
    os << format_real(radii[i]) << ',' << format_real(M[i]) << ','
       << format_real(dM_numeric[i]) << ',' << format_real(remainder[i]) << ','
       << format_real(remainder_integral[i]) << ',' << format_real(J1[i]) << '\n';
  return os.str();
}

MonotonicityReport check_monotonicity(const WeissProfile& p, double tol) {
  MonotonicityReport rep;
  const std::size_t n = p.M.size();
  auto integral = [&](std::size_t i) {
    return i < p.remainder_integral.size() ? p.remainder_integral[i] : 0.0;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double drop = (p.M[i] - integral(i)) - (p.M[i + 1] - integral(i + 1));
    if (drop > tol) rep.M_violations.push_back(int(i));
    if (drop > rep.worst_violation) {
      rep.worst_violation = drop;
      rep.worst_index = int(i);
      rep.worst_in_J1 = false;
    }
  }
  for (std::size_t i = 0; i + 1 < p.J1.size(); ++i) {
    const double drop = p.J1[i] - p.J1[i + 1];
    if (drop > tol) rep.J1_violations.push_back(int(i));
    if (drop > rep.worst_violation) {
      rep.worst_violation = drop;
      rep.worst_index = int(i);
      rep.worst_in_J1 = true;
    }
  }
  rep.pass = rep.M_violations.empty() && rep.J1_violations.empty();
  return rep;
}

double limit_density(const ProblemSpec& spec, const ScalarField& u,
                     const StagnationPoint& sp, double r_small) {
  if (!(r_small > 0.0)) throw RadiusOutOfRange("radius must be positive", r_small);
  if (!disk_inside_grid(u.grid(), sp.location, r_small))
    throw RadiusOutOfRange("disk around the stagnation point leaves the grid", r_small);
  const Reconstruction rec(u);
  const double I = integrate_disk(rec, sp.location, r_small, [&](const Sample& s) {
    return s.positive ? frozen_weight_at(spec, s.X) : 0.0;
  });
  return std::pow(r_small, 2.0 * sp.kappa) * I;
}

std::vector<double> log_spaced(double r_min, double r_max, int count) {
  std::vector<double> r;
  if (count == 1) return {r_min};
  for (int i = 0; i < count; ++i)
    r.push_back(r_min * std::pow(r_max / r_min, double(i) / (count - 1)));
  return r;
}

}  // namespace cornerlab
