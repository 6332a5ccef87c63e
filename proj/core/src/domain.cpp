#include "cornerlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cornerlab/errors.hpp"

namespace cornerlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int sign_of(double t) { return t > 0.0 ? 1 : (t < 0.0 ? -1 : 0); }

}  // namespace

double force_angle(Force f) {
  using std::numbers::pi;
  switch (f) {
    case Force::Right: return 0.0;
    case Force::Up: return pi / 2.0;
    case Force::Left: return pi;
    case Force::Down: return 3.0 * pi / 2.0;
  }
  return 0.0;
}

std::string to_string(Force f) {
  switch (f) {
    case Force::Right: return "right";
    case Force::Up: return "up";
    case Force::Left: return "left";
    case Force::Down: return "down";
  }
  return "?";
}

Force force_from_string(const std::string& s) {
  if (s == "right") return Force::Right;
  if (s == "up") return Force::Up;
  if (s == "left") return Force::Left;
  if (s == "down") return Force::Down;
  throw InvalidSpec("unknown force direction '" + s +
                    "' (expected right, up, left or down)");
}

double Rect::distance_to_boundary(Point p) const {
  return std::min({p.x - xmin, xmax - p.x, p.y - ymin, ymax - p.y});
}

void ProblemSpec::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) ||
      !std::isfinite(beta))
    throw InvalidSpec("alpha and beta must be finite and non-negative");
  if (!(alpha + beta > 0.0)) throw InvalidSpec("alpha + beta must be positive");
  if (!(weight_constant > 0.0))
    throw InvalidSpec("weight_constant must be positive");
  if (!(domain.xmax > domain.xmin && domain.ymax > domain.ymin))
    throw InvalidSpec("domain rectangle is empty");

  std::visit(
      overloaded{
          [&](const Type1& t) {
            if (t.x0 == 0.0 || !std::isfinite(t.x0))
              throw InvalidSpec("Type 1 requires x0 != 0");
            if (beta < 1.0) throw InvalidSpec("Type 1 requires beta >= 1");
            if (t.force != Force::Up && t.force != Force::Down)
              throw InvalidSpec("Type 1 force must be up or down");
          },
          [&](const Type2& t) {
            if (t.y0 == 0.0 || !std::isfinite(t.y0))
              throw InvalidSpec("Type 2 requires y0 != 0");
            if (alpha < 1.0) throw InvalidSpec("Type 2 requires alpha >= 1");
            if (t.force != Force::Left && t.force != Force::Right)
              throw InvalidSpec("Type 2 force must be left or right");
          },
          [&](const Type3& t) {
            if (!std::isfinite(t.theta_star))
              throw InvalidSpec("Type 3 theta_star must be finite");
            if (alpha < 1.0 || beta < 1.0)
              throw InvalidSpec("Type 3 requires alpha >= 1 and beta >= 1");
          }},
      stag);

  if (!domain.contains(stagnation_point()))
    throw InvalidSpec("stagnation point lies outside the domain");
}

Point ProblemSpec::stagnation_point() const {
  return std::visit(overloaded{[](const Type1& t) { return Point{t.x0, 0.0}; },
                               [](const Type2& t) { return Point{0.0, t.y0}; },
                               [](const Type3&) { return Point{0.0, 0.0}; }},
                    stag);
}

int ProblemSpec::type() const { return static_cast<int>(stag.index()) + 1; }

int ProblemSpec::subcase() const {
  return std::visit(
      overloaded{[](const Type1& t) {
                   const bool down = t.force == Force::Down;
                   if (t.x0 < 0) return down ? 1 : 3;
                   return down ? 4 : 2;
                 },
                 [](const Type2& t) {
                   const bool left = t.force == Force::Left;
                   if (t.y0 < 0) return left ? 1 : 3;
                   return left ? 4 : 2;
                 },
                 [](const Type3&) { return 0; }},
      stag);
}

std::optional<double> ProblemSpec::force_direction() const {
  return std::visit(
      overloaded{[](const Type1& t) -> std::optional<double> {
                   return force_angle(t.force);
                 },
                 [](const Type2& t) -> std::optional<double> {
                   return force_angle(t.force);
                 },
                 [](const Type3&) -> std::optional<double> { return {}; }},
      stag);
}

Vec2 ProblemSpec::fluid_direction() const {
  double angle = std::visit(
      overloaded{[](const Type1& t) { return force_angle(t.force); },
                 [](const Type2& t) { return force_angle(t.force); },
                 [](const Type3& t) { return t.theta_star; }},
      stag);
  return {std::cos(angle), std::sin(angle)};
}

AxisSides weight_sides(const ProblemSpec& spec) {
  return std::visit(
      overloaded{[](const Type1& t) {
                   return AxisSides{sign_of(t.x0),
                                    t.force == Force::Down ? -1 : 1};
                 },
                 [](const Type2& t) {
                   return AxisSides{t.force == Force::Left ? -1 : 1,
                                    sign_of(t.y0)};
                 },
                 [](const Type3&) { return AxisSides{0, 0}; }},
      spec.stag);
}

double side_power(double t, int side, double e) {
  if (e == 0.0) return 1.0;
  const double base = side == 0 ? std::abs(t) : std::max(side * t, 0.0);
  if (base == 0.0) return 0.0;
  if (e == 1.0) return base;
  if (e == 2.0) return base * base;
  return std::pow(base, e);
}

double weight_at(const ProblemSpec& spec, Point p) {
  const AxisSides s = weight_sides(spec);
  return spec.weight_constant * side_power(p.x, s.x, spec.alpha) *
         side_power(p.y, s.y, spec.beta);
}

namespace {

// d/dt of side_power(t, side, e)
double side_power_derivative(double t, int side, double e) {
  if (e == 0.0) return 0.0;
  if (side == 0) {
    if (t == 0.0) return 0.0;
    return e * side_power(t, 0, e - 1.0) * (t > 0 ? 1.0 : -1.0);
  }
  if (side * t <= 0.0) return 0.0;
  return e * side_power(t, side, e - 1.0) * side;
}

}  // namespace

Vec2 weight_gradient(const ProblemSpec& spec, Point p) {
  const AxisSides s = weight_sides(spec);
  const double fx = side_power(p.x, s.x, spec.alpha);
  const double fy = side_power(p.y, s.y, spec.beta);
  return {spec.weight_constant * side_power_derivative(p.x, s.x, spec.alpha) * fy,
          spec.weight_constant * fx * side_power_derivative(p.y, s.y, spec.beta)};
}

double frozen_weight_at(const ProblemSpec& spec, Point p) {
  const AxisSides s = weight_sides(spec);
  const Point x0 = spec.stagnation_point();
  const double c = spec.weight_constant;
  switch (spec.type()) {
    case 1:
      return c * side_power(x0.x, s.x, spec.alpha) * side_power(p.y, s.y, spec.beta);
    case 2:
      return c * side_power(p.x, s.x, spec.alpha) * side_power(x0.y, s.y, spec.beta);
    default:
      return weight_at(spec, p);
  }
}

double kappa_for(const ProblemSpec& spec) {
  switch (spec.type()) {
    case 1: return -(spec.beta + 2.0) / 2.0;
    case 2: return -(spec.alpha + 2.0) / 2.0;
    default: return -(spec.alpha + spec.beta + 2.0) / 2.0;
  }
}

GridSpec GridSpec::covering(const Rect& r, int n) {
  if (n < 16) throw InvalidGrid("grid needs at least 16 nodes per side");
  const double longest = std::max(r.width(), r.height());
  const double h = longest / (n - 1);
  const double cx = r.width() / h;
  const double cy = r.height() / h;
  const double rx = std::round(cx);
  const double ry = std::round(cy);
  if (std::abs(cx - rx) > 1e-9 * cx || std::abs(cy - ry) > 1e-9 * cy)
    throw InvalidGrid("domain sides are not commensurate with a square grid");
  GridSpec g{static_cast<int>(rx) + 1, static_cast<int>(ry) + 1,
             {r.xmin, r.ymin}, h};
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (nx < 16 || ny < 16) throw InvalidGrid("grid needs nx, ny >= 16");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw InvalidGrid("grid spacing must be positive");
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y))
    throw InvalidGrid("grid origin must be finite");
}

ScalarField::ScalarField(GridSpec grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw InvalidGrid("value count does not match the grid");
}

double ScalarField::interpolate(Point p) const {
  const double h = grid_.spacing;
  double fx = (p.x - grid_.origin.x) / h;
  double fy = (p.y - grid_.origin.y) / h;
  fx = std::clamp(fx, 0.0, static_cast<double>(grid_.nx - 1));
  fy = std::clamp(fy, 0.0, static_cast<double>(grid_.ny - 1));
  int i = std::min(static_cast<int>(fx), grid_.nx - 2);
  int j = std::min(static_cast<int>(fy), grid_.ny - 2);
  const double tx = fx - i;
  const double ty = fy - j;
  const double v00 = (*this)(i, j);
  const double v10 = (*this)(i + 1, j);
  const double v01 = (*this)(i, j + 1);
  const double v11 = (*this)(i + 1, j + 1);
  return (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double ScalarField::min() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

StagnationPoint stagnation_point_for(const ProblemSpec& spec,
                                     std::optional<double> delta) {
  const Point x0 = spec.stagnation_point();
  const double reach = spec.domain.distance_to_boundary(x0);
  StagnationPoint sp{x0, kappa_for(spec), delta.value_or(reach / 2.0)};
  if (!(sp.delta > 0.0) || sp.delta > reach / 2.0 * (1.0 + 1e-12))
    throw InvalidSpec("delta must lie in (0, dist(X0, boundary)/2]");
  return sp;
}

}  // namespace cornerlab
