#pragma once

// Discrete minimization of J(u) = int |grad u|^2 + w chi_{u>0}, and the
// residual checks of the weak-solution definition.

#include <functional>
#include <string>
#include <vector>

#include "cornerlab/domain.hpp"

namespace cornerlab {

using WeightFn = std::function<double(Point)>;

struct SolverParams {
  double smoothing_eps = 0.0;  ///< final mollification width; 0 -> spacing^1.5
  double step_size = 0.0;      ///< SOR relaxation factor in (0, 2); 0 -> auto
  int max_iters = 40000;       ///< total sweeps over all continuation stages
  double tol_energy = 1e-11;   ///< relative decrease per sweep ending a stage
  bool positivity_projection = true;
  bool enforce_half_plane = true;  ///< u = 0 on the non-fluid side of X0
  int continuation_stages = 10;
  double eps_start_fraction = 0.25;  ///< first width, relative to max boundary data
  /// Start from the interior values of the data field instead of the
  /// harmonic extension of its boundary values.
  bool start_from_data = false;

  void validate() const;
};

struct SolveResult {
  ScalarField u;
  bool converged = true;  ///< false: max_iters hit while still decreasing
  int iterations = 0;
  double energy = 0.0;    ///< exact-indicator energy of u
  double final_eps = 0.0;
  /// Mollified objective after every sweep; non-increasing inside a stage.
  std::vector<double> objective_history;
  std::vector<int> stage_starts;
};

/// Dirichlet energy of the piecewise linear interpolant plus trapezoid
/// quadrature of w [u > 0]. `weight` overrides the spec weight when set.
double energy(const ProblemSpec& spec, const ScalarField& u, const WeightFn& weight = {});

/// Projected nonlinear SOR on the mollified energy with continuation in the
/// mollification width. Boundary nodes keep the values of `boundary_data`;
/// its interior values are used only with `start_from_data`.
SolveResult minimize_energy(const ProblemSpec& spec, const GridSpec& grid,
                            const ScalarField& boundary_data,
                            const SolverParams& params = {},
                            const WeightFn& weight = {});

/// Boundary data sampled from a function on the grid boundary.
ScalarField boundary_from(const GridSpec& grid, const std::function<double(Point)>& g);

/// max |5-point Laplacian| (divided by spacing^2) over interior nodes whose
/// 5-point stencil has u > threshold at the centre.
double harmonic_residual(const ScalarField& u, double threshold);

struct TestVectorField {
  ScalarField phi1;
  ScalarField phi2;
  double collar = 0.0;

  double sup_norm() const;
  /// Smooth bump (1 at centre, zero beyond radius) times the vector v.
  static TestVectorField bump(const GridSpec& grid, Point centre, double radius, Vec2 v);
};

/// Quadrature of |grad u|^2 div phi - 2 grad u . Dphi grad u + div(w phi) chi.
double domain_variation_residual(const ProblemSpec& spec, const ScalarField& u,
                                 const TestVectorField& phi);

}  // namespace cornerlab
