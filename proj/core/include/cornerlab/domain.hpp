#pragma once

// Problem description, grids and fields shared by every analysis module.
//
// The weight is kept in the physical (un-normalized) frame: a stagnation
// point sits on the x or y axis (or at the origin) and the gradient function
// is C |x|^alpha |y|^beta, made one-sided according to the subcase so that it
// only acts on the fluid side of the degenerate axis.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cornerlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }
inline Vec2 operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 v) { return v.x * v.x + v.y * v.y; }

/// Direction of the external force at a Type 1/2 stagnation point
/// (theta_0 = 0, pi/2, pi, 3pi/2).
enum class Force { Right, Up, Left, Down };

double force_angle(Force f);
std::string to_string(Force f);
Force force_from_string(const std::string& s);

/// X0 = (x0, 0), x0 != 0; force must be Up or Down.
struct Type1 {
  double x0 = -1.0;
  Force force = Force::Down;
};

/// X0 = (0, y0), y0 != 0; force must be Left or Right.
struct Type2 {
  double y0 = 1.0;
  Force force = Force::Right;
};

/// X0 = (0, 0); theta_star is the bisector of the asymptotic directions.
struct Type3 {
  double theta_star = 0.0;
};

using StagnationType = std::variant<Type1, Type2, Type3>;

struct Rect {
  double xmin = -1.0;
  double ymin = -1.0;
  double xmax = 1.0;
  double ymax = 1.0;

  bool contains(Point p) const {
    return p.x > xmin && p.x < xmax && p.y > ymin && p.y < ymax;
  }
  double distance_to_boundary(Point p) const;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

struct ProblemSpec {
  double alpha = 0.0;
  double beta = 1.0;
  StagnationType stag = Type1{};
  Rect domain;
  double weight_constant = 1.0;

  /// Throws InvalidSpec when the exponent restrictions of the stagnation
  /// type are violated or X0 is not inside the domain.
  void validate() const;

  Point stagnation_point() const;
  int type() const;      ///< 1, 2 or 3
  int subcase() const;   ///< 1..4 for Types 1 and 2, 0 for Type 3

  /// theta_0 for Types 1 and 2; empty for Type 3.
  std::optional<double> force_direction() const;

  /// Unit normal of the half-plane that may hold fluid: (cos, sin) of
  /// theta_0, or of theta_star for Type 3.
  Vec2 fluid_direction() const;
};

/// Sign of the active side per axis: +1 keeps t > 0, -1 keeps t < 0, 0 means
/// two-sided |t|.
struct AxisSides {
  int x = 0;
  int y = 0;
};
AxisSides weight_sides(const ProblemSpec& spec);

/// max(s*t, 0)^e (or |t|^e for s == 0) with 0^0 == 1.
double side_power(double t, int side, double e);

/// C |x|^alpha |y|^beta with the one-sided conventions of the subcase.
double weight_at(const ProblemSpec& spec, Point p);

/// Gradient of weight_at where it is differentiable (one-sided factors
/// contribute zero outside their active side).
Vec2 weight_gradient(const ProblemSpec& spec, Point p);

/// Weight with the non-degenerate factor frozen at X0; this is the weight
/// that governs the blow-up limit (and the density prefactor).
double frozen_weight_at(const ProblemSpec& spec, Point p);

/// kappa_1 = -(beta+2)/2, kappa_2 = -(alpha+2)/2, kappa_3 = -(alpha+beta+2)/2.
double kappa_for(const ProblemSpec& spec);

/// Homogeneity degree of the blow-up limit, -kappa.
inline double homogeneity_degree(const ProblemSpec& spec) {
  return -kappa_for(spec);
}

struct GridSpec {
  int nx = 0;
  int ny = 0;
  Point origin;
  double spacing = 0.0;

  /// Grid with `n` nodes on the longer side of a rectangle whose sides are
  /// integer multiples of the resulting spacing. Throws InvalidGrid otherwise.
  static GridSpec covering(const Rect& r, int n);

  void validate() const;
  std::size_t size() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
  Point node(int i, int j) const {
    return {origin.x + i * spacing, origin.y + j * spacing};
  }
  Rect bounds() const {
    return {origin.x, origin.y, origin.x + (nx - 1) * spacing,
            origin.y + (ny - 1) * spacing};
  }
  bool on_boundary(int i, int j) const {
    return i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
  }
  bool operator==(const GridSpec&) const = default;
};

/// Row-major nodal values on a uniform grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridSpec grid, double fill = 0.0);
  ScalarField(GridSpec grid, std::vector<double> values);

  template <class F>
  static ScalarField sample(const GridSpec& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        out(i, j) = f(grid.node(i, j));
    return out;
  }

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

  /// Bilinear interpolation; points outside the grid are clamped to it.
  double interpolate(Point p) const;

  bool all_finite() const;
  double min() const;
  double max() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

struct StagnationPoint {
  Point location;
  double kappa = 0.0;
  double delta = 0.0;
};

/// delta defaults to dist(X0, boundary of the domain) / 2.
StagnationPoint stagnation_point_for(const ProblemSpec& spec,
                                     std::optional<double> delta = {});

}  // namespace cornerlab
