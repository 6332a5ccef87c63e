#include <doctest.h>

#include "cornerlab/integration.hpp"
#include "cornerlab/oracle.hpp"
#include "support.hpp"

using namespace cltest;

TEST_SUITE("integration") {

TEST_CASE("disk area and second moment of a positive field") {
  const GridSpec g = grid_on({-1, -1, 1, 1}, 1.0 / 64);
  const Reconstruction rec(ScalarField(g, 1.0));
  for (double r : {0.1, 0.37, 0.8}) {
    const double area = integrate_disk(rec, {0.05, -0.02}, r, [](const Sample&) { return 1.0; });
    CHECK(area == doctest::Approx(pi * r * r).epsilon(2e-3));
    const double m2 = integrate_disk(rec, {0, 0}, r, [](const Sample& s) {
      return s.X.x * s.X.x + s.X.y * s.X.y;
    });
    CHECK(m2 == doctest::Approx(pi * std::pow(r, 4) / 2).epsilon(3e-3));
  }
}

TEST_CASE("circle quadrature") {
  const GridSpec g = grid_on({-1, -1, 1, 1}, 1.0 / 64);
  const Reconstruction rec(ScalarField::sample(g, [](Point p) { return 1.0 + p.x * p.x; }));
  const double r = 0.5;
  const double I = integrate_circle(rec, {0, 0}, r, [](const Sample& s) { return s.value; });
  // int (1 + r^2 cos^2) r dt
  CHECK(I == doctest::Approx(2 * pi * r + pi * r * r * r).epsilon(1e-4));
  CHECK(circle_samples(0.01, 0.1) == 64);
  CHECK(circle_samples(1.0, 1.0 / 256) == int(std::ceil(2 * pi * 256)));
}

TEST_CASE("sub-cell reconstruction locates a straight free boundary") {
  // u = (0.3 - y)_+ with the line between nodes
  const GridSpec g = grid_on({-1, -1, 1, 1}, 1.0 / 32);
  const double c = 0.3 + 0.4 / 32;
  const Reconstruction rec(ScalarField::sample(g, [&](Point p) { return std::max(c - p.y, 0.0); }));
  CHECK(rec.signed_value({0.1, c}) == doctest::Approx(0.0).epsilon(1e-12));
  const double area = integrate_disk(rec, {0, 0}, 0.9, [](const Sample& s) {
    return s.positive ? 1.0 : 0.0;
  });
  // disk minus the cap above y = c
  const double cap = 0.81 * std::acos(c / 0.9) - c * std::sqrt(0.81 - c * c);
  CHECK(area == doctest::Approx(pi * 0.81 - cap).epsilon(1e-3));
}

TEST_CASE("cone profile moments match the polar closed form") {
  const ProblemSpec s = stokes();
  const ClosedFormProfile p = blowup_limit(s);
  const GridSpec g = grid_on({-2, -1, 0, 1}, 1.0 / 128);
  const Point x0{-1, 0};
  const Reconstruction rec(ScalarField::sample(g, [&](Point q) {
    return evaluate_blowup_limit(p, q - x0);
  }));
  const double R = 0.6, k = p.degree, A = p.C0 * p.prefactor;
  const double exact = A * A * std::pow(R, 2 * k + 2) / (2 * k + 2) * (pi / (2 * k));
  const double I = integrate_disk(rec, x0, R, [](const Sample& q) { return q.value * q.value; });
  CHECK(I == doctest::Approx(exact).epsilon(1e-4));

  // the positive set has the cone area
  const double area = integrate_disk(rec, x0, R, [](const Sample& q) { return q.positive ? 1.0 : 0.0; });
  CHECK(area == doctest::Approx(0.5 * R * R * (2 * pi / 3)).epsilon(2e-3));

  // Dirichlet energy: int |grad u|^2 = k A^2 R^{2k} pi / (2k) (Green on the cone)
  const double D = integrate_disk(rec, x0, R, [](const Sample& q) { return norm2(q.grad); });
  CHECK(D == doctest::Approx(k * A * A * std::pow(R, 2 * k) * pi / (2 * k)).epsilon(5e-3));
}

TEST_CASE("disk containment") {
  const GridSpec g = grid_on({-1, -1, 1, 1}, 1.0 / 16);
  CHECK(disk_inside_grid(g, {0, 0}, 1.0));
  CHECK_FALSE(disk_inside_grid(g, {0.1, 0}, 1.0));
}

}  // TEST_SUITE
