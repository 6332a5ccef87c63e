#pragma once

// Quadrature over disks and circles of grid fields.
//
// A nodal field that is zero outside its positivity set carries no sub-cell
// information about where the free boundary crosses a cell. Reconstruction
// fixes that: zero nodes next to positive ones receive a negative value
// extrapolated linearly from the positive side, and the bilinear interpolant
// of this signed extension locates the zero level inside the cell. Analysis
// code uses u = max(ext, 0) and chi = [ext > 0].

#include <functional>

#include "cornerlab/domain.hpp"

namespace cornerlab {

struct Sample {
  Point X;
  double value = 0.0;  ///< reconstructed u >= 0
  Vec2 grad;           ///< gradient of u (zero off the positivity set)
  bool positive = false;
};

class Reconstruction {
 public:
  explicit Reconstruction(const ScalarField& u);

  const GridSpec& grid() const { return ext_.grid(); }
  const ScalarField& field() const { return u_; }
  const ScalarField& extension() const { return ext_; }

  double signed_value(Point p) const { return ext_.interpolate(p); }
  Sample at(Point p) const;

  /// True if the cell with lower-left node (i, j) holds nodes of both signs.
  bool mixed_cell(int i, int j) const;

 private:
  ScalarField u_;
  ScalarField ext_;
};

using Integrand = std::function<double(const Sample&)>;

struct DiskQuadrature {
  int cut_subsamples = 8;  ///< per axis, for cut, mixed or kinked cells
  bool subsample_all = false;
};

/// Integral of f over the disk B_r(center), restricted to the grid.
double integrate_disk(const Reconstruction& rec, Point center, double r,
                      const Integrand& f, DiskQuadrature q = {});

/// Integral of f over the whole grid rectangle.
double integrate_grid(const Reconstruction& rec, const Integrand& f,
                      DiskQuadrature q = {});

/// Trapezoid rule on max(64, ceil(2 pi r / h)) equally spaced angles.
double integrate_circle(const Reconstruction& rec, Point center, double r,
                        const Integrand& f);

int circle_samples(double r, double spacing);

/// True if the closed disk B_r(center) lies inside the grid rectangle.
bool disk_inside_grid(const GridSpec& g, Point center, double r);

}  // namespace cornerlab
