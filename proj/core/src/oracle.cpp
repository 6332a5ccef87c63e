#include "cornerlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cornerlab/errors.hpp"

namespace cornerlab {

namespace {

constexpr double pi = std::numbers::pi;

// distance from t to the nearest multiple of `period`
double off_lattice(double t, double period) {
  const double m = t / period;
  return std::abs(m - std::round(m)) * period;
}

}  // namespace

double wrap_angle(double t) {
  double w = std::remainder(t, 2.0 * pi);
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

double weight_angle(double theta, double alpha, double beta) {
  return side_power(std::cos(theta), 0, alpha) * side_power(std::sin(theta), 0, beta);
}

double angular_weight(const ProblemSpec& spec, double theta) {
  const AxisSides s = weight_sides(spec);
  switch (spec.type()) {
    case 1: return side_power(std::sin(theta), s.y, spec.beta);
    case 2: return side_power(std::cos(theta), s.x, spec.alpha);
    default: return weight_angle(theta, spec.alpha, spec.beta);
  }
}

double density_prefactor(const ProblemSpec& spec) {
  const AxisSides s = weight_sides(spec);
  const Point x0 = spec.stagnation_point();
  switch (spec.type()) {
    case 1: return spec.weight_constant * side_power(x0.x, s.x, spec.alpha);
    case 2: return spec.weight_constant * side_power(x0.y, s.y, spec.beta);
    default: return spec.weight_constant;
  }
}

double predicted_bisector(const ProblemSpec& spec) {
  if (const auto* t1 = std::get_if<Type1>(&spec.stag))
    return t1->force == Force::Down ? -pi / 2.0 : pi / 2.0;
  if (const auto* t2 = std::get_if<Type2>(&spec.stag))
    return t2->force == Force::Left ? pi : 0.0;
  return wrap_angle(std::get<Type3>(spec.stag).theta_star);
}

ClosedFormProfile blowup_limit(const ProblemSpec& spec, std::optional<AnglePair> pair) {
  spec.validate();
  ClosedFormProfile p;
  p.degree = homogeneity_degree(spec);
  const double k = p.degree;
  double bis = 0.0;
  if (spec.type() == 3) {
    if (!pair) throw InvalidSpec("Type 3 blow-up limit needs an angle pair");
    if (std::abs(pair->theta2 - pair->theta1 - pi / k) > 1e-9)
      throw InvalidSpec("angle pair opening does not match 2pi/(alpha+beta+2)");
    bis = pair->bisector();
  } else {
    bis = predicted_bisector(spec);
  }
  p.theta1 = bis - pi / (2.0 * k);
  p.theta2 = bis + pi / (2.0 * k);
  p.prefactor = std::sqrt(density_prefactor(spec));
  p.C0 = std::sqrt(angular_weight(spec, p.theta1)) / k;
  p.phi0 = wrap_angle(-pi / 2.0 - k * p.theta1);
  return p;
}

double evaluate_blowup_limit(const ClosedFormProfile& p, double r, double theta) {
  if (!(r > 0.0)) return 0.0;
  const double k = p.degree;
  const double d = wrap_angle(theta - p.bisector());
  const double half = pi / (2.0 * k);
  if (std::abs(d) >= half) return 0.0;
  return p.prefactor * p.C0 * std::pow(r, k) * std::cos(k * d);
}

double evaluate_blowup_limit(const ClosedFormProfile& p, Vec2 X) {
  return evaluate_blowup_limit(p, std::hypot(X.x, X.y), std::atan2(X.y, X.x));
}

Vec2 blowup_limit_gradient(const ClosedFormProfile& p, Vec2 X) {
  const double r = std::hypot(X.x, X.y);
  if (!(r > 0.0)) return {};
  const double theta = std::atan2(X.y, X.x);
  const double k = p.degree;
  const double d = wrap_angle(theta - p.bisector());
  if (std::abs(d) >= pi / (2.0 * k)) return {};
  const double amp = p.prefactor * p.C0 * k * std::pow(r, k - 1.0);
  const double ur = amp * std::cos(k * d);
  const double ut = -amp * std::sin(k * d);
  const double c = std::cos(theta), s = std::sin(theta);
  return {ur * c - ut * s, ur * s + ut * c};
}

namespace {

// integral of f over (a, b), split at the axis directions where the angular
// weights have kinks
template <class F>
double angular_integral(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> cuts{a};
  for (double t = std::ceil(a / (pi / 2.0)) * (pi / 2.0); t < b; t += pi / 2.0)
    if (t > a) cuts.push_back(t);
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 15, 1e-13);
  }
  return total;
}

}  // namespace

double corner_density(const ProblemSpec& spec, double theta1, double theta2) {
  if (!(theta2 > theta1)) return 0.0;
  const double k = homogeneity_degree(spec);
  const double I = angular_integral([&](double t) { return angular_weight(spec, t); },
                                    theta1, theta2);
  return density_prefactor(spec) / (2.0 * k) * I;
}

double full_ball_density(const ProblemSpec& spec) {
  return corner_density(spec, -pi, pi);
}

double pair_opening(double alpha, double beta) { return 2.0 * pi / (alpha + beta + 2.0); }

double angle_condition_H(double s, double alpha, double beta) {
  if (s == 0.0 || !std::isfinite(s)) throw DomainError("angle condition needs s != 0");
  const double A = pair_opening(alpha, beta);
  const double ca = std::cos(A), sa = std::sin(A);
  return side_power(ca - s * sa, 0, alpha) * side_power(ca + sa / s, 0, beta) - 1.0;
}

int expected_pair_count(double alpha, double beta) {
  if (alpha == beta) return 8;
  const double A = pair_opening(alpha, beta);
  const double threshold = 2.0 * std::sqrt(alpha * beta) / std::abs(alpha - beta);
  return std::tan(A) > threshold * (1.0 + 1e-9) ? 12 : 8;
}

bool angle_condition_degenerate(double alpha, double beta) {
  return alpha == 1.0 && beta == 1.0;
}

namespace {

bool is_symmetric_pair(double theta1, double A, double alpha, double beta) {
  const double b = theta1 + A / 2.0;
  if (off_lattice(b, pi / 2.0) < 1e-8) return true;
  return alpha == beta && off_lattice(b - pi / 4.0, pi / 2.0) < 1e-8;
}

double to_half_open(double t) {
  double w = wrap_angle(t);
  return w >= pi ? w - 2.0 * pi : w;
}

}  // namespace

std::vector<AnglePair> solve_angle_pairs(double alpha, double beta) {
  if (!(alpha >= 1.0) || !(beta >= 1.0))
    throw InvalidSpec("angle pairs need alpha >= 1 and beta >= 1");
  const double A = pair_opening(alpha, beta);
  std::vector<double> roots;

  if (angle_condition_degenerate(alpha, beta)) {
    for (int m = -3; m <= 4; ++m) roots.push_back(to_half_open(m * pi / 4.0 - A / 2.0));
  } else {
    auto G = [&](double t) {
      return weight_angle(t + A, alpha, beta) - weight_angle(t, alpha, beta);
    };
    constexpr int N = 8192;
    const double dt = 2.0 * pi / N;
    double t0 = -pi, g0 = G(t0);
    for (int i = 0; i < N; ++i) {
      const double t1 = -pi + (i + 1) * dt;
      const double g1 = G(t1);
      if (g0 == 0.0) {
        roots.push_back(t0);
      } else if (g0 * g1 < 0.0) {
        double lo = t0, hi = t1, glo = g0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = G(mid);
          if (gm == 0.0) { lo = hi = mid; break; }
          if ((gm < 0.0) == (glo < 0.0)) { lo = mid; glo = gm; } else { hi = mid; }
        }
        roots.push_back(0.5 * (lo + hi));
      }
      t0 = t1;
      g0 = g1;
    }
    // Pairs centred on an axis (or a diagonal when alpha == beta) solve the
    // condition exactly by reflection. At the tan A threshold such a root is
    // triple and G is flat to rounding within ~1e-5 of it, so the bisection
    // only finds it to eps^(1/3); use the exact edge instead.
    std::vector<double> exact;
    for (int m = -2; m <= 1; ++m) {
      exact.push_back(to_half_open(m * pi / 2.0 - A / 2.0));
      if (alpha == beta) exact.push_back(to_half_open(m * pi / 2.0 + pi / 4.0 - A / 2.0));
    }
    std::erase_if(roots, [&](double t) {
      return std::any_of(exact.begin(), exact.end(),
                         [&](double e) { return std::abs(wrap_angle(t - e)) < 5e-5; });
    });
    roots.insert(roots.end(), exact.begin(), exact.end());
    std::erase_if(roots, [&](double t) { return weight_angle(t, alpha, beta) < 1e-12; });
    for (double& t : roots) t = to_half_open(t);
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double t : roots) {
    const bool dup = std::any_of(merged.begin(), merged.end(), [&](double m) {
      return std::abs(wrap_angle(t - m)) < 1e-8;
    });
    if (!dup) merged.push_back(t);
  }

  std::vector<AnglePair> out;
  for (double t : merged)
    out.push_back({t, t + A, is_symmetric_pair(t, A, alpha, beta)});
  return out;
}

TschebysheffCoefficients tschebysheff_coefficients(double theta1, double alpha,
                                                   double beta) {
  const double k = (alpha + beta + 2.0) / 2.0;
  const double A = pi / k;
  const double w1 = weight_angle(theta1, alpha, beta);
  const double w2 = weight_angle(theta1 + A, alpha, beta);
  if (std::abs(w1 - w2) > 1e-8)
    throw InvalidPair("edge weights differ: theta1 is not an admissible pair edge");
  // edges on an axis leave cos or sin at rounding level, not zero
  if (!(w1 >= 1e-12)) throw InvalidPair("edge weight vanishes at theta1");
  TschebysheffCoefficients c;
  c.C0 = std::sqrt(w1) / k;
  c.a = -c.C0 * std::cos(k * theta1);
  c.b = -c.C0 * std::sin(k * theta1);
  // the arcsin branch is fixed by positivity on the cone interior
  c.phi0 = wrap_angle(-pi / 2.0 - k * theta1);
  return c;
}

}  // namespace cornerlab
