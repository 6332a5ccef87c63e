#pragma once

// Blow-up analysis at a stagnation point: rescalings onto a reference
// square, homogeneity and Bernstein checks, asymptotic directions and the
// corner / cusp / flat classification.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerlab/domain.hpp"
#include "cornerlab/oracle.hpp"

namespace cornerlab {

/// Reference square [-1, 1]^2 with n nodes per side.
GridSpec reference_grid(int n = 129);

/// u_r(X) = r^kappa u(X0 + r X) sampled on the reference grid from the
/// sub-cell reconstruction of u. Needs B_{2r}(X0) inside the grid.
ScalarField rescale(const ScalarField& u, const StagnationPoint& sp, double r, int n = 129);

/// L2(B_1) norm of X . grad u - degree u for a reference-square field.
double homogeneity_residual(const ScalarField& u0, double degree);

/// L2(B_1) distance between two fields on the same reference grid.
double unit_disk_distance(const ScalarField& a, const ScalarField& b);

std::vector<double> default_annuli(int count = 8, double lo = 0.2, double hi = 0.9);

struct DirectionEstimate {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double opening = 0.0;
  bool disconnected = false;  ///< some annulus had more than one positive arc
  bool full = false;          ///< every used annulus was entirely positive
  int annuli_used = 0;
};

/// Median positive arc over annuli of the given radii about `centre`.
/// Throws EmptyPositivity when no annulus meets {u > 0}.
DirectionEstimate estimate_asymptotic_directions(const ScalarField& u, Point centre,
                                                 const std::vector<double>& radii);
/// Reference-square field, eight annuli with radii in [0.2, 0.9].
DirectionEstimate estimate_asymptotic_directions(const ScalarField& u0);

struct BlowupResult {
  std::vector<ScalarField> rescaled_fields;
  std::vector<double> radii_used;  ///< strictly decreasing
  std::vector<double> successive_distance;
  double homogeneity_residual = 0.0;
  double density_estimate = 0.0;
  std::optional<DirectionEstimate> directions;
  std::string direction_error;

  nlohmann::json to_json() const;
};

/// Rescales at every radius (sorted to decreasing order), measures distances
/// between consecutive rescalings, and analyses the smallest one. `annuli`
/// are the reference-square radii used for the direction estimate.
BlowupResult blowup(const ProblemSpec& spec, const ScalarField& u, const StagnationPoint& sp,
                    std::vector<double> radii, int reference_nodes = 129,
                    const std::vector<double>& annuli = default_annuli());

struct BernsteinReport {
  bool pass = true;
  double max_ratio = 0.0;        ///< max |grad u|^2 / w over nodes with w > 0
  Point worst{};
  int zero_weight_violations = 0;  ///< positive nodes where the weight vanishes
  double bound = 0.0;
};

BernsteinReport check_bernstein(const ProblemSpec& spec, const ScalarField& u,
                                const StagnationPoint& sp, double r0, double C);

double estimate_density(const ProblemSpec& spec, const ScalarField& u,
                        const StagnationPoint& sp, double r);

enum class Verdict { Corner, Cusp, Flat };
std::string to_string(Verdict v);

struct OracleDensities {
  std::vector<double> corner;  ///< one per admissible cone (Type 3: per pair)
  std::vector<AnglePair> pairs;
  double full = 0.0;
};

/// Type 3 uses every pair from solve_angle_pairs.
OracleDensities oracle_densities(const ProblemSpec& spec);

struct ClassificationReport {
  Verdict verdict = Verdict::Corner;
  double density_estimate = 0.0;
  double distance_to_corner_density = 0.0;
  double distance_to_zero = 0.0;
  double distance_to_full_density = 0.0;
  double corner_density = 0.0;
  double full_density = 0.0;
  std::optional<AnglePair> best_pair;
  std::string theoretical_note;

  nlohmann::json to_json() const;
};

ClassificationReport classify(const ProblemSpec& spec, double density_estimate,
                              const StagnationPoint& sp, const OracleDensities& oracle);

}  // namespace cornerlab
