#include "cornerlab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cornerlab/integration.hpp"

namespace cornerlab {

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string colour(double t) {
  // dark blue -> teal -> yellow
  static constexpr std::array<std::array<double, 3>, 5> stops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const std::size_t i = std::min<std::size_t>(std::size_t(t), stops.size() - 2);
  const double f = t - double(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = int(std::lround(stops[i][c] + f * (stops[i + 1][c] - stops[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

Point lerp_edge(Point a, double fa, Point b, double fb, double level) {
  const double t = (level - fa) / (fb - fa);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace

std::vector<Segment> contour_segments(const ScalarField& f, double level) {
  const GridSpec& g = f.grid();
  std::vector<Segment> out;
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      const Point p[4] = {g.node(i, j), g.node(i + 1, j), g.node(i + 1, j + 1), g.node(i, j + 1)};
      const double v[4] = {f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)};
      int mask = 0;
      for (int c = 0; c < 4; ++c)
        if (v[c] > level) mask |= 1 << c;
      if (mask == 0 || mask == 15) continue;
      std::vector<Point> cuts;
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        if ((v[a] > level) != (v[b] > level)) cuts.push_back(lerp_edge(p[a], v[a], p[b], v[b], level));
      }
      if (cuts.size() == 2) {
        out.push_back({cuts[0], cuts[1]});
      } else if (cuts.size() == 4) {
        // saddle: decide the pairing from the cell centre value
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        if ((centre > level) == (v[0] > level)) {
          out.push_back({cuts[0], cuts[3]});
          out.push_back({cuts[1], cuts[2]});
        } else {
          out.push_back({cuts[0], cuts[1]});
          out.push_back({cuts[2], cuts[3]});
        }
      }
    }
  return out;
}

std::string render_svg(const ScalarField& u, const SvgOverlay& ov, int size) {
  const GridSpec& g = u.grid();
  const Rect b = g.bounds();
  const double margin = 20.0;
  const double scale = (size - 2 * margin) / std::max(b.width(), b.height());
  auto sx = [&](double x) { return margin + (x - b.xmin) * scale; };
  auto sy = [&](double y) { return size - margin - (y - b.ymin) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!ov.title.empty()) os << "<title>" << ov.title << "</title>\n";
  os << "<defs><clipPath id=\"frame\"><rect x=\"" << fixed(margin) << "\" y=\""
     << fixed(sy(b.ymax)) << "\" width=\"" << fixed(b.width() * scale) << "\" height=\""
     << fixed(b.height() * scale) << "\"/></clipPath></defs>\n";

  // heat map on at most 128 x 128 blocks
  const double umax = std::max(u.max(), 1e-300);
  const int blocks = 128;
  const int stride_x = std::max(1, (g.nx - 1 + blocks - 1) / blocks);
  const int stride_y = std::max(1, (g.ny - 1 + blocks - 1) / blocks);
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (int j = 0; j + 1 < g.ny; j += stride_y)
    for (int i = 0; i + 1 < g.nx; i += stride_x) {
      const int i1 = std::min(i + stride_x, g.nx - 1), j1 = std::min(j + stride_y, g.ny - 1);
      const double v = 0.25 * (u(i, j) + u(i1, j) + u(i, j1) + u(i1, j1));
      if (!(v > 0.0)) continue;
      const Point p0 = g.node(i, j), p1 = g.node(i1, j1);
      os << "<rect x=\"" << fixed(sx(p0.x)) << "\" y=\"" << fixed(sy(p1.y)) << "\" width=\""
         << fixed((p1.x - p0.x) * scale) << "\" height=\"" << fixed((p1.y - p0.y) * scale)
         << "\" fill=\"" << colour(v / umax) << "\"/>\n";
    }
  os << "</g>\n";

  auto polyline = [&](const std::vector<Segment>& segs, const char* stroke, double width) {
    if (segs.empty()) return;
    os << "<path fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << fixed(width)
       << "\" d=\"";
    for (const auto& [a, c] : segs)
      os << 'M' << fixed(sx(a.x)) << ' ' << fixed(sy(a.y)) << 'L' << fixed(sx(c.x)) << ' '
         << fixed(sy(c.y));
    os << "\"/>\n";
  };
  for (int l = 1; l <= ov.contour_levels; ++l)
    polyline(contour_segments(u, umax * l / (ov.contour_levels + 1)), "#ffffff", 0.6);

  // free boundary from the signed extension
  const Reconstruction rec(u);
  polyline(contour_segments(rec.extension(), 0.0), "#000000", 1.5);

  if (ov.stagnation) {
    const Point c = *ov.stagnation;
    const double len = std::max(b.width(), b.height()) * 2.0;
    os << "<g clip-path=\"url(#frame)\">\n";
    for (double t : ov.edge_angles) {
      os << "<line x1=\"" << fixed(sx(c.x)) << "\" y1=\"" << fixed(sy(c.y)) << "\" x2=\""
         << fixed(sx(c.x + len * std::cos(t))) << "\" y2=\"" << fixed(sy(c.y + len * std::sin(t)))
         << "\" stroke=\"#d62728\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\"/>\n";
    }
    os << "</g>\n";
    os << "<circle cx=\"" << fixed(sx(c.x)) << "\" cy=\"" << fixed(sy(c.y))
       << "\" r=\"3\" fill=\"#d62728\"/>\n";
  }
  os << "<rect x=\"" << fixed(margin) << "\" y=\"" << fixed(sy(b.ymax)) << "\" width=\""
     << fixed(b.width() * scale) << "\" height=\"" << fixed(b.height() * scale)
     << "\" fill=\"none\" stroke=\"#444444\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace cornerlab
