#include <doctest.h>

#include "cornerlab/errors.hpp"
#include "support.hpp"

using namespace cltest;

TEST_SUITE("domain") {

TEST_CASE("weight examples") {
  CHECK(weight_at(stokes(), {-1.0, -0.5}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(weight_at(type3(1, 1), {0.0, 0.7}) == 0.0);
  CHECK(weight_at(type3(2, 1), {0.5, -0.5}) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("one-sided weights act on the fluid side only") {
  const ProblemSpec s = stokes();
  CHECK(weight_at(s, {-1.0, 0.5}) == 0.0);
  CHECK(weight_at(s, {-1.0, 0.0}) == 0.0);

  // Subcase 1.1 with alpha = 1: (-x)(-y)
  ProblemSpec t = type1(1, 1, -1, Force::Down, {-2, -1, 0, 1});
  CHECK(weight_at(t, {-0.5, -0.25}) == doctest::Approx(0.125));
  CHECK(weight_at(t, {0.5, -0.25}) == 0.0);

  // Subcase 2.2: y0 > 0, force to the right -> x_+^alpha y_+^beta
  ProblemSpec r = type2(2, 1, 1, Force::Right, {-1, 0, 1, 2});
  CHECK(r.subcase() == 2);
  CHECK(weight_at(r, {0.5, 1.0}) == doctest::Approx(0.25));
  CHECK(weight_at(r, {-0.5, 1.0}) == 0.0);
}

TEST_CASE("weight vanishes at every stagnation point") {
  for (const ProblemSpec& s :
       {stokes(), type1(2, 3, 1, Force::Up, {0, -1, 2, 1}),
        type2(1, 0, -1, Force::Left, {-1, -2, 1, 0}), type3(2, 1), type3(1, 1)})
    CHECK(weight_at(s, s.stagnation_point()) == 0.0);
}

TEST_CASE("weight is monotone in |x| and |y| on the active quadrant") {
  const ProblemSpec s = type3(1.5, 2.0);
  double prev = -1.0;
  for (double t = 0.1; t < 1.0; t += 0.1) {
    const double w = weight_at(s, {t, -0.4});
    CHECK(w > prev);
    CHECK(weight_at(s, {-t, 0.4}) == doctest::Approx(w));
    prev = w;
  }
}

TEST_CASE("weight gradient matches finite differences") {
  const ProblemSpec s = type1(1.5, 2.0, -1, Force::Down, {-2, -1, 0, 1});
  const Point p{-0.7, -0.3};
  const double e = 1e-6;
  const Vec2 g = weight_gradient(s, p);
  CHECK(g.x == doctest::Approx((weight_at(s, {p.x + e, p.y}) - weight_at(s, {p.x - e, p.y})) /
                               (2 * e)).epsilon(1e-6));
  CHECK(g.y == doctest::Approx((weight_at(s, {p.x, p.y + e}) - weight_at(s, {p.x, p.y - e})) /
                               (2 * e)).epsilon(1e-6));
}

TEST_CASE("kappa per type") {
  CHECK(kappa_for(stokes()) == -1.5);
  CHECK(kappa_for(type2(2, 0, 1, Force::Right, {-1, 0, 1, 2})) == -2.0);
  CHECK(kappa_for(type3(1, 1)) == -2.0);
  CHECK(homogeneity_degree(type3(2, 1)) == 2.5);
}

TEST_CASE("subcases and force directions") {
  CHECK(stokes().subcase() == 1);
  CHECK(*stokes().force_direction() == doctest::Approx(3 * pi / 2));
  CHECK(type1(0, 1, -1, Force::Up, {-2, -1, 0, 1}).subcase() == 3);
  CHECK(type1(0, 1, 1, Force::Up, {0, -1, 2, 1}).subcase() == 2);
  CHECK(type1(0, 1, 1, Force::Down, {0, -1, 2, 1}).subcase() == 4);
  CHECK_FALSE(type3(2, 1).force_direction().has_value());
  CHECK(force_from_string(to_string(Force::Left)) == Force::Left);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(type1(0, 0.5, -1, Force::Down, {-2, -1, 0, 1}).validate(), InvalidSpec);
  CHECK_THROWS_AS(type1(0, 1, -1, Force::Left, {-2, -1, 0, 1}).validate(), InvalidSpec);
  CHECK_THROWS_AS(type1(0, 1, 0, Force::Down, {-2, -1, 1, 1}).validate(), InvalidSpec);
  CHECK_THROWS_AS(type2(0.5, 1, 1, Force::Right, {-1, 0, 1, 2}).validate(), InvalidSpec);
  CHECK_THROWS_AS(type3(1, 0.5).validate(), InvalidSpec);
  CHECK_THROWS_AS(type1(0, 1, -3, Force::Down, {-2, -1, 0, 1}).validate(), InvalidSpec);
  ProblemSpec c = stokes();
  c.weight_constant = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidSpec);
  CHECK_NOTHROW(stokes().validate());
}

TEST_CASE("grids") {
  const GridSpec g = GridSpec::covering({-2, -1, 0, 1}, 257);
  CHECK(g.nx == 257);
  CHECK(g.ny == 257);
  CHECK(g.spacing == 1.0 / 128);
  CHECK(g.bounds().xmax == 0.0);

  const GridSpec w = GridSpec::covering({-1, 0, 1, 2}, 65);
  CHECK(w.nx == 65);
  CHECK_THROWS_AS(GridSpec::covering({0, 0, 1, 0.3}, 64), InvalidGrid);

  GridSpec small = g;
  small.nx = 8;
  CHECK_THROWS_AS(small.validate(), InvalidGrid);
  GridSpec bad = g;
  bad.spacing = -1.0;
  CHECK_THROWS_AS(bad.validate(), InvalidGrid);
}

TEST_CASE("fields interpolate bilinearly and clamp") {
  const GridSpec g = grid_on({0, 0, 1, 1}, 1.0 / 16);
  const ScalarField f = ScalarField::sample(g, [](Point p) { return 2 * p.x - 3 * p.y + 1; });
  CHECK(f.interpolate({0.3, 0.7}) == doctest::Approx(2 * 0.3 - 3 * 0.7 + 1));
  CHECK(f.interpolate({2.0, 0.0}) == doctest::Approx(3.0));
  CHECK(f.all_finite());
  CHECK(f.max() == doctest::Approx(3.0));
  CHECK(f.min() == doctest::Approx(-2.0));
}

TEST_CASE("stagnation point and delta") {
  const StagnationPoint sp = stagnation_point_for(stokes());
  CHECK(sp.location == Point{-1, 0});
  CHECK(sp.kappa == -1.5);
  CHECK(sp.delta == doctest::Approx(0.5));
  CHECK(stagnation_point_for(stokes(), 0.3).delta == 0.3);
  CHECK_THROWS(stagnation_point_for(stokes(), 0.6));
}

}  // TEST_SUITE
