#include <doctest.h>

#include "cornerlab/errors.hpp"
#include "cornerlab/oracle.hpp"
#include "cornerlab/weiss.hpp"
#include "support.hpp"

using namespace cltest;

namespace {

ScalarField profile_field(const ClosedFormProfile& p, Point x0, const GridSpec& g) {
  return ScalarField::sample(g, [&](Point q) { return evaluate_blowup_limit(p, q - x0); });
}

}  // namespace

TEST_SUITE("weiss") {

TEST_CASE("zero field gives a zero profile") {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, 129);
  const auto sp = stagnation_point_for(s);
  const WeissProfile p = weiss_profile(s, ScalarField(g), sp, log_spaced(0.05, 0.45, 8));
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    CHECK(p.M[i] == 0.0);
    CHECK(p.J1[i] == 0.0);
    CHECK(p.remainder[i] == 0.0);
    CHECK(p.dM_numeric[i] == 0.0);
  }
  CHECK(check_monotonicity(p, 0.0).pass);
}

TEST_CASE("corner profile has constant energy equal to its density") {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, 513);
  const auto sp = stagnation_point_for(s);
  const ScalarField u = profile_field(blowup_limit(s), sp.location, g);
  // (1/3)(cos t1 - cos t2) over (-5pi/6, -pi/6)
  const double exact = (std::cos(-5 * pi / 6) - std::cos(-pi / 6)) / -3.0;
  CHECK(exact == doctest::Approx(std::sqrt(3.0) / 3));
  for (double r : {0.05, 0.1, 0.2, 0.3, 0.45}) CHECK(std::abs(weiss_energy(s, u, sp, r) - exact) <= 1e-2);
  CHECK(std::abs(limit_density(s, u, sp, 0.25) - exact) <= 1e-2);
}

TEST_CASE("Type 3 corner energy is constant and equals the corner density") {
  const ProblemSpec s = type3(1, 1);
  const GridSpec g = GridSpec::covering(s.domain, 513);
  const auto sp = stagnation_point_for(s);
  const ScalarField u = profile_field(blowup_limit(s, AnglePair{-3 * pi / 4, -pi / 4, true}), sp.location, g);
  const double density = corner_density(s, -3 * pi / 4, -pi / 4);
  CHECK(density == doctest::Approx(0.125).epsilon(1e-10));
  for (double r : {0.1, 0.2, 0.3, 0.45}) CHECK(std::abs(weiss_energy(s, u, sp, r) - density) <= 1e-2);
}

TEST_CASE("remainder vanishes identically where the weight is homogeneous") {
  const GridSpec g3 = GridSpec::covering({-1, -1, 1, 1}, 65);
  const ScalarField one(g3, 1.0);
  const ProblemSpec t3 = type3(2, 1);
  CHECK(remainder_vanishes(t3));
  CHECK(remainder(t3, one, stagnation_point_for(t3), 0.3) == 0.0);

  const ProblemSpec s = stokes();
  CHECK(remainder_vanishes(s));
  const GridSpec g = GridSpec::covering(s.domain, 65);
  CHECK(remainder(s, ScalarField(g, 2.0), stagnation_point_for(s), 0.3) == 0.0);

  CHECK_FALSE(remainder_vanishes(type1(1, 1, -1, Force::Down, {-2, -1, 0, 1})));
}

TEST_CASE("remainder against dense sampling") {
  const ProblemSpec s = type1(1, 1, -1, Force::Down, {-2, -1, 0, 1});
  const auto sp = stagnation_point_for(s);
  const GridSpec g = GridSpec::covering(s.domain, 513);

  // field occupying the lower half plane: r^-4 int (x0 - x)(-y) over the half disk
  const ScalarField half = ScalarField::sample(g, [](Point p) { return std::max(-p.y, 0.0); });
  // field occupying the quadrant x < x0, y < 0: the same integral is r^4 / 8
  const ScalarField quarter =
      ScalarField::sample(g, [](Point p) { return std::max(-p.y, 0.0) * std::max(-1 - p.x, 0.0); });

  for (double r : {0.1, 0.3}) {
    // 1000 x 1000 midpoint lattice over the bounding square
    const int N = 1000;
    double dense_half = 0.0, dense_quarter = 0.0;
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const double a = -r + (i + 0.5) * 2 * r / N, b = -r + (j + 0.5) * 2 * r / N;
        if (a * a + b * b >= r * r || b >= 0) continue;
        const double v = (-a) * (-b) * std::pow(2 * r / N, 2);
        dense_half += v;
        if (a < 0) dense_quarter += v;
      }
    dense_half /= std::pow(r, 4);
    dense_quarter /= std::pow(r, 4);
    CHECK(std::abs(remainder(s, half, sp, r) - dense_half) <= 1e-6);
    CHECK(dense_quarter == doctest::Approx(0.125).epsilon(1e-3));
    CHECK(remainder(s, quarter, sp, r) == doctest::Approx(0.125).epsilon(1e-4));
  }
}

TEST_CASE("remainder stays finite down to small radii") {
  const ProblemSpec s = type1(1, 1, -1, Force::Down, {-2, -1, 0, 1});
  const auto sp = stagnation_point_for(s);
  const GridSpec g = GridSpec::covering(s.domain, 257);
  const ScalarField u = profile_field(blowup_limit(s), sp.location, g);
  const WeissProfile p = weiss_profile(s, u, sp, log_spaced(0.01, 0.45, 24));
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    CHECK(std::isfinite(p.remainder[i]));
    CHECK(std::isfinite(p.M[i]));
    CHECK(std::abs(p.remainder[i]) < 10.0);
    CHECK(p.J1[i] >= 0.0);
  }
}

TEST_CASE("dM matches the remainder on the exact profile") {
  const ProblemSpec s = stokes();
  const auto sp = stagnation_point_for(s);
  const GridSpec g = GridSpec::covering(s.domain, 513);
  const WeissProfile p = weiss_profile(s, profile_field(blowup_limit(s), sp.location, g), sp,
                                       log_spaced(0.1, 0.45, 16));
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    CHECK(std::abs(p.dM_numeric[i] - p.remainder[i]) <= 5e-2);
  CHECK(check_monotonicity(p, 1e-3).pass);
}

TEST_CASE("cumulative remainder convention") {
  const auto c = cumulative_remainder({0.1, 0.2, 0.4}, {1.0, 2.0, 2.0});
  CHECK(c[0] == doctest::Approx(0.1));
  CHECK(c[1] == doctest::Approx(0.1 + 0.15));
  CHECK(c[2] == doctest::Approx(0.25 + 0.4));
}

TEST_CASE("monotonicity checker") {
  WeissProfile adv;
  adv.radii = {0.1, 0.2, 0.3};
  adv.M = {1.0, 0.5, 0.6};
  adv.remainder = {0, 0, 0};
  adv.remainder_integral = {0, 0, 0};
  adv.J1 = {0.1, 0.2, 0.3};
  adv.dM_numeric = {0, 0, 0};
  const MonotonicityReport r = check_monotonicity(adv, 1e-3);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_violation == doctest::Approx(0.5));
  CHECK(r.worst_index == 0);
  CHECK_FALSE(r.worst_in_J1);
  CHECK(r.M_violations == std::vector<int>{0});

  adv.M = {1, 1, 1};
  adv.J1 = {0.3, 0.2, 0.2};
  const MonotonicityReport j = check_monotonicity(adv, 1e-3);
  CHECK_FALSE(j.pass);
  CHECK(j.worst_in_J1);
  CHECK(j.J1_violations == std::vector<int>{0});

  // the test applies to M minus the remainder integral
  adv.J1 = {0.1, 0.2, 0.3};
  adv.M = {1.0, 1.2, 1.4};
  adv.remainder_integral = {0.0, 0.3, 0.6};
  CHECK_FALSE(check_monotonicity(adv, 1e-3).pass);
  adv.remainder_integral = {0.0, 0.1, 0.2};
  CHECK(check_monotonicity(adv, 1e-3).pass);
}

TEST_CASE("limit density of trivial fields") {
  const ProblemSpec s = stokes();
  const auto sp = stagnation_point_for(s);
  const GridSpec g = GridSpec::covering(s.domain, 257);
  CHECK(limit_density(s, ScalarField(g), sp, 0.2) == 0.0);
  // (1/3) int_{-pi}^{0} (-sin t) dt
  CHECK(std::abs(limit_density(s, ScalarField(g, 1.0), sp, 0.2) - 2.0 / 3.0) <= 1e-2);
}

TEST_CASE("radius preconditions") {
  const ProblemSpec s = stokes();
  const auto sp = stagnation_point_for(s);
  const GridSpec g = GridSpec::covering(s.domain, 65);
  const ScalarField u(g, 1.0);
  CHECK_THROWS_AS(weiss_energy(s, u, sp, 0.6), RadiusOutOfRange);
  CHECK_THROWS_AS(weiss_energy(s, u, sp, 0.0), RadiusOutOfRange);
  CHECK_THROWS_AS(weiss_profile(s, u, sp, {0.2, 0.1}), RadiusOutOfRange);
}

TEST_CASE("csv layout") {
  const ProblemSpec s = stokes();
  const GridSpec g = GridSpec::covering(s.domain, 65);
  const auto csv = weiss_profile(s, ScalarField(g), stagnation_point_for(s), {0.1, 0.2}).to_csv();
  CHECK(csv.rfind("r,M,dM_numeric,remainder,remainder_integral,J1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("log spacing") {
  const auto r = log_spaced(0.05, 0.45, 32);
  CHECK(r.size() == 32);
  CHECK(r.front() == 0.05);
  CHECK(r.back() == doctest::Approx(0.45));
  CHECK(r[1] / r[0] == doctest::Approx(r[31] / r[30]));
}

}  // TEST_SUITE
