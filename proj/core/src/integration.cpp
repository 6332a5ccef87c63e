#include "cornerlab/integration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cornerlab {

namespace {

constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                             {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};

struct CellPos {
  int i, j;
  double tx, ty;
};

CellPos locate(const GridSpec& g, Point p) {
  double fx = std::clamp((p.x - g.origin.x) / g.spacing, 0.0, double(g.nx - 1));
  double fy = std::clamp((p.y - g.origin.y) / g.spacing, 0.0, double(g.ny - 1));
  int i = std::min(int(fx), g.nx - 2);
  int j = std::min(int(fy), g.ny - 2);
  return {i, j, fx - i, fy - j};
}

}  // namespace

Reconstruction::Reconstruction(const ScalarField& u) : u_(u), ext_(u) {
  const GridSpec& g = u.grid();
  auto inside = [&](int i, int j) { return i >= 0 && j >= 0 && i < g.nx && j < g.ny; };
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (u(i, j) > 0.0) continue;
      double sum = 0.0;
      int count = 0;
      for (const auto& d : kDirs) {
        const int i1 = i + d[0], j1 = j + d[1];
        const int i2 = i + 2 * d[0], j2 = j + 2 * d[1];
        if (!inside(i1, j1) || !(u(i1, j1) > 0.0)) continue;
        if (!inside(i2, j2)) continue;
        const double u1 = u(i1, j1), u2 = u(i2, j2);
        // need a slope pointing away from this node
        if (!(u2 > u1)) continue;
        sum += 2.0 * u1 - u2;
        ++count;
      }
      if (count > 0) ext_(i, j) = std::min(sum / count, 0.0);
    }
  }
}

bool Reconstruction::mixed_cell(int i, int j) const {
  const double a = ext_(i, j), b = ext_(i + 1, j), c = ext_(i, j + 1),
               d = ext_(i + 1, j + 1);
  const bool any_pos = a > 0 || b > 0 || c > 0 || d > 0;
  const bool all_pos = a > 0 && b > 0 && c > 0 && d > 0;
  return any_pos && !all_pos;
}

Sample Reconstruction::at(Point p) const {
  const GridSpec& g = ext_.grid();
  const CellPos c = locate(g, p);
  const double v00 = ext_(c.i, c.j), v10 = ext_(c.i + 1, c.j);
  const double v01 = ext_(c.i, c.j + 1), v11 = ext_(c.i + 1, c.j + 1);
  const double tx = c.tx, ty = c.ty;
  const double v = (1 - ty) * ((1 - tx) * v00 + tx * v10) + ty * ((1 - tx) * v01 + tx * v11);
  Sample s;
  s.X = p;
  if (v > 0.0) {
    s.positive = true;
    s.value = v;
    const double h = g.spacing;
    s.grad = {((1 - ty) * (v10 - v00) + ty * (v11 - v01)) / h,
              ((1 - tx) * (v01 - v00) + tx * (v11 - v10)) / h};
  }
  return s;
}

bool disk_inside_grid(const GridSpec& g, Point c, double r) {
  const Rect b = g.bounds();
  const double tol = 1e-12 * std::max(1.0, r);
  return c.x - r >= b.xmin - tol && c.x + r <= b.xmax + tol &&
         c.y - r >= b.ymin - tol && c.y + r <= b.ymax + tol;
}

double integrate_disk(const Reconstruction& rec, Point c, double r,
                      const Integrand& f, DiskQuadrature q) {
  if (!(r > 0.0)) return 0.0;
  const GridSpec& g = rec.grid();
  const double h = g.spacing;
  const double r2 = r * r;
  const int i0 = std::max(0, int(std::floor((c.x - r - g.origin.x) / h)));
  const int i1 = std::min(g.nx - 2, int(std::ceil((c.x + r - g.origin.x) / h)));
  const int j0 = std::max(0, int(std::floor((c.y - r - g.origin.y) / h)));
  const int j1 = std::min(g.ny - 2, int(std::ceil((c.y + r - g.origin.y) / h)));

  const double gauss = 0.5 / std::sqrt(3.0);
  const int n = std::max(1, q.cut_subsamples);
  const double sub = h / n;

  double total = 0.0;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const Point lo = g.node(i, j);
      const double xa = lo.x, xb = lo.x + h, ya = lo.y, yb = lo.y + h;
      const double dx = std::max({xa - c.x, 0.0, c.x - xb});
      const double dy = std::max({ya - c.y, 0.0, c.y - yb});
      if (dx * dx + dy * dy >= r2) continue;
      const double fx = std::max(std::abs(xa - c.x), std::abs(xb - c.x));
      const double fy = std::max(std::abs(ya - c.y), std::abs(yb - c.y));
      const bool inside = fx * fx + fy * fy <= r2;
      const bool kinked = (xa < 0.0 && xb > 0.0) || (ya < 0.0 && yb > 0.0);
      if (inside && !kinked && !q.subsample_all && !rec.mixed_cell(i, j)) {
        double s = 0.0;
        for (double ox : {0.5 - gauss, 0.5 + gauss})
          for (double oy : {0.5 - gauss, 0.5 + gauss})
            s += f(rec.at({xa + ox * h, ya + oy * h}));
        total += s * h * h / 4.0;
        continue;
      }
      double s = 0.0;
      for (int b = 0; b < n; ++b) {
        const double y = ya + (b + 0.5) * sub;
        for (int a = 0; a < n; ++a) {
          const double x = xa + (a + 0.5) * sub;
          if (!inside) {
            const double ex = x - c.x, ey = y - c.y;
            if (ex * ex + ey * ey > r2) continue;
          }
          s += f(rec.at({x, y}));
        }
      }
      total += s * sub * sub;
    }
  }
  return total;
}

double integrate_grid(const Reconstruction& rec, const Integrand& f, DiskQuadrature q) {
  const Rect b = rec.grid().bounds();
  const Point c{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
  // a disk enclosing the rectangle: every cell is classified as inside
  return integrate_disk(rec, c, 1.01 * std::hypot(b.width(), b.height()), f, q);
}

int circle_samples(double r, double spacing) {
  return std::max(64, int(std::ceil(2.0 * std::numbers::pi * r / spacing)));
}

double integrate_circle(const Reconstruction& rec, Point c, double r,
                        const Integrand& f) {
  if (!(r > 0.0)) return 0.0;
  const int n = circle_samples(r, rec.grid().spacing);
  const double dt = 2.0 * std::numbers::pi / n;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = k * dt;
    s += f(rec.at({c.x + r * std::cos(t), c.y + r * std::sin(t)}));
  }
  return s * r * dt;
}

}  // namespace cornerlab
