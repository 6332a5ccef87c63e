#pragma once

// Shared fixtures and independent reference computations for the tests.
// Nothing here calls the quadrature or root finding of the library.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/tools/roots.hpp>

#include "cornerlab/domain.hpp"

namespace cltest {

using namespace cornerlab;
inline constexpr double pi = std::numbers::pi;

inline ProblemSpec type1(double alpha, double beta, double x0, Force f, Rect dom) {
  ProblemSpec s;
  s.alpha = alpha;
  s.beta = beta;
  s.stag = Type1{x0, f};
  s.domain = dom;
  return s;
}

inline ProblemSpec type2(double alpha, double beta, double y0, Force f, Rect dom) {
  ProblemSpec s;
  s.alpha = alpha;
  s.beta = beta;
  s.stag = Type2{y0, f};
  s.domain = dom;
  return s;
}

inline ProblemSpec type3(double alpha, double beta, double theta_star = 0.0,
                         Rect dom = {-1, -1, 1, 1}) {
  ProblemSpec s;
  s.alpha = alpha;
  s.beta = beta;
  s.stag = Type3{theta_star};
  s.domain = dom;
  return s;
}

/// alpha = 0, beta = 1, X0 = (-1, 0), force pointing down.
inline ProblemSpec stokes() { return type1(0.0, 1.0, -1.0, Force::Down, {-2, -1, 0, 1}); }

// Antiderivative of |cos t|^a |sin t|^b from 0, through incomplete beta
// functions quadrant by quadrant.
inline double angular_antiderivative(double t, double a, double b) {
  using boost::math::beta;
  const double quarter = pi / 2.0;
  const double Q = 0.5 * beta((b + 1) / 2, (a + 1) / 2);
  const double m = std::floor(t / quarter);
  const double r = t - m * quarter;
  const double s2 = std::pow(std::sin(r), 2);
  const bool odd = std::fmod(std::abs(m), 2.0) == 1.0;
  const double part = s2 <= 0.0 ? 0.0
                      : odd     ? 0.5 * beta((a + 1) / 2, (b + 1) / 2, s2)
                                : 0.5 * beta((b + 1) / 2, (a + 1) / 2, s2);
  return m * Q + part;
}

/// Integral of |cos t|^a |sin t|^b over (t1, t2).
inline double angular_moment(double t1, double t2, double a, double b) {
  return angular_antiderivative(t2, a, b) - angular_antiderivative(t1, a, b);
}

/// |cos t|^a |sin t|^b evaluated directly.
inline double wa(double t, double a, double b) {
  return std::pow(std::abs(std::cos(t)), a) * std::pow(std::abs(std::sin(t)), b);
}

struct BruteForcePairs {
  bool degenerate = false;
  std::vector<double> theta1;  // sorted, in [-pi, pi)
};

// Dense sampling of G(t) = wa(t + A) - wa(t) in double precision; every
// sign change or exact zero is re-bracketed and solved with TOMS 748 in
// 50-digit arithmetic, so roots of higher multiplicity are located to full
// double accuracy. Roots where the edge weight vanishes are discarded.
inline BruteForcePairs brute_force_pairs(double a, double b, int samples = 100000) {
  using mp = boost::multiprecision::cpp_bin_float_50;
  const double A = 2.0 * pi / (a + b + 2.0);
  auto G = [&](double t) { return wa(t + A, a, b) - wa(t, a, b); };
  const mp mpi = boost::math::constants::pi<mp>();
  const mp mA = 2 * mpi / (mp(a) + mp(b) + 2);
  auto wmp = [&](const mp& t) { return pow(abs(cos(t)), mp(a)) * pow(abs(sin(t)), mp(b)); };
  auto Gmp = [&](const mp& t) { return wmp(t + mA) - wmp(t); };

  BruteForcePairs out;
  double gmax = 0.0;
  std::vector<double> roots;
  const double dt = 2.0 * pi / samples;
  auto refine = [&](double lo, double hi) {
    const mp glo = Gmp(mp(lo)), ghi = Gmp(mp(hi));
    if (glo == 0) return roots.push_back(lo);
    if (ghi == 0) return roots.push_back(hi);
    if ((glo < 0) == (ghi < 0)) return;
    std::uintmax_t iters = 400;
    auto [x, y] = boost::math::tools::toms748_solve(
        Gmp, mp(lo), mp(hi), glo, ghi, boost::math::tools::eps_tolerance<mp>(160), iters);
    roots.push_back(static_cast<double>((x + y) / 2));
  };
  double t0 = -pi, g0 = G(t0);
  for (int i = 1; i <= samples; ++i) {
    const double t1 = -pi + i * dt;
    const double g1 = G(t1);
    gmax = std::max(gmax, std::abs(g1));
    // widened so a root sitting on a sample is still bracketed in mp
    if (g0 == 0.0 || g0 * g1 < 0.0) refine(t0 - 0.5 * dt, t1 + 0.5 * dt);
    t0 = t1;
    g0 = g1;
  }
  if (gmax < 1e-13) {
    out.degenerate = true;
    return out;
  }
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (wa(r, a, b) < 1e-12) continue;
    double w = std::remainder(r, 2.0 * pi);
    if (w >= pi) w -= 2.0 * pi;
    bool dup = false;
    for (double m : out.theta1)
      if (std::abs(std::remainder(w - m, 2.0 * pi)) < 1e-8) dup = true;
    if (!dup) out.theta1.push_back(w);
  }
  std::sort(out.theta1.begin(), out.theta1.end());
  return out;
}

/// Monte Carlo estimate of the mass of f over the unit disk.
template <class F>
double monte_carlo_disk(F&& f, int samples, unsigned seed, double* stderr_out = nullptr) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = U(rng), y = U(rng);
    const double v = (x * x + y * y < 1.0) ? 4.0 * f(x, y) : 0.0;
    s += v;
    s2 += v * v;
  }
  const double mean = s / samples;
  if (stderr_out) *stderr_out = std::sqrt((s2 / samples - mean * mean) / samples);
  return mean;
}

/// Grid with spacing h on rect r.
inline GridSpec grid_on(const Rect& r, double h) {
  GridSpec g;
  g.origin = {r.xmin, r.ymin};
  g.spacing = h;
  g.nx = int(std::lround(r.width() / h)) + 1;
  g.ny = int(std::lround(r.height() / h)) + 1;
  return g;
}

}  // namespace cltest
