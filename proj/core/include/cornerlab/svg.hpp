#pragma once

// Fixed-size diagnostic plots: heat map of u, contour lines, the free
// boundary and the predicted cone edges.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cornerlab/domain.hpp"

namespace cornerlab {

using Segment = std::pair<Point, Point>;

/// Marching squares on the bilinear interpolant of f at `level`.
std::vector<Segment> contour_segments(const ScalarField& f, double level);

struct SvgOverlay {
  std::optional<Point> stagnation;
  std::vector<double> edge_angles;  ///< rays drawn from the stagnation point
  std::string title;
  int contour_levels = 8;
};

std::string render_svg(const ScalarField& u, const SvgOverlay& overlay = {}, int size = 640);

}  // namespace cornerlab
