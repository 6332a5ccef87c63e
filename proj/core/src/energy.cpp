#include "cornerlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cornerlab/errors.hpp"
#include "cornerlab/integration.hpp"

namespace cornerlab {

void SolverParams::validate() const {
  if (smoothing_eps < 0.0) throw InvalidSpec("smoothing_eps must be positive");
  if (step_size < 0.0 || step_size >= 2.0)
    throw InvalidSpec("step_size (SOR factor) must lie in (0, 2)");
  if (max_iters <= 0) throw InvalidSpec("max_iters must be positive");
  if (!(tol_energy > 0.0)) throw InvalidSpec("tol_energy must be positive");
  if (continuation_stages < 1) throw InvalidSpec("continuation_stages must be >= 1");
  if (!(eps_start_fraction > 0.0)) throw InvalidSpec("eps_start_fraction must be positive");
}

namespace {

std::vector<double> nodal_weights(const ProblemSpec& spec, const GridSpec& g,
                                  const WeightFn& weight) {
  std::vector<double> w(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Point p = g.node(i, j);
      w[g.index(i, j)] = weight ? weight(p) : weight_at(spec, p);
    }
  return w;
}

}  // namespace

double energy(const ProblemSpec& spec, const ScalarField& u, const WeightFn& weight) {
  const GridSpec& g = u.grid();
  const double h = g.spacing;
  double dir = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (i + 1 < g.nx) {
        const double d = u(i + 1, j) - u(i, j);
        dir += (j == 0 || j == g.ny - 1 ? 0.5 : 1.0) * d * d;
      }
      if (j + 1 < g.ny) {
        const double d = u(i, j + 1) - u(i, j);
        dir += (i == 0 || i == g.nx - 1 ? 0.5 : 1.0) * d * d;
      }
    }
  double area = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (!(u(i, j) > 0.0)) continue;
      const double tw = (i == 0 || i == g.nx - 1 ? 0.5 : 1.0) *
                        (j == 0 || j == g.ny - 1 ? 0.5 : 1.0);
      const Point p = g.node(i, j);
      area += tw * (weight ? weight(p) : weight_at(spec, p));
    }
  return dir + h * h * area;
}

ScalarField boundary_from(const GridSpec& grid, const std::function<double(Point)>& g) {
  ScalarField b(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      if (grid.on_boundary(i, j)) b(i, j) = g(grid.node(i, j));
  return b;
}

namespace {

// f(t) = 4t^2 - 2St + c F(t), F = clamp(t/eps, 0, 1): the part of the
// mollified energy that depends on one nodal value.
struct Local {
  double S, c, eps;
  double operator()(double t) const {
    const double F = eps > 0.0 ? std::clamp(t / eps, 0.0, 1.0) : (t > 0.0 ? 1.0 : 0.0);
    return 4.0 * t * t - 2.0 * S * t + c * F;
  }
  double argmin() const {
    if (eps <= 0.0) {
      const double t = std::max(S / 4.0, 0.0);
      return (*this)(t) < 0.0 ? t : 0.0;
    }
    const double ta = std::clamp((2.0 * S - c / eps) / 8.0, 0.0, eps);
    const double tb = std::max(S / 4.0, eps);
    return (*this)(ta) <= (*this)(tb) ? ta : tb;
  }
};

}  // namespace

SolveResult minimize_energy(const ProblemSpec& spec, const GridSpec& grid,
                            const ScalarField& boundary_data,
                            const SolverParams& params, const WeightFn& weight) {
  params.validate();
  grid.validate();
  if (!(boundary_data.grid() == grid))
    throw InvalidBoundary("boundary data lives on a different grid");
  {
    const Rect b = grid.bounds(), d = spec.domain;
    const double tol = 1e-9 * grid.spacing;
    if (std::abs(b.xmin - d.xmin) > tol || std::abs(b.xmax - d.xmax) > tol ||
        std::abs(b.ymin - d.ymin) > tol || std::abs(b.ymax - d.ymax) > tol)
      throw InvalidGrid("grid does not cover the problem domain exactly");
  }

  const int nx = grid.nx, ny = grid.ny;
  const double h = grid.spacing;
  ScalarField u(grid, 0.0);
  double bmax = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (grid.on_boundary(i, j)) {
        const double v = boundary_data(i, j);
        if (!std::isfinite(v) || v < 0.0)
          throw InvalidBoundary("boundary data must be finite and non-negative");
        u(i, j) = v;
        bmax = std::max(bmax, v);
      }

  // nodes that never move: the boundary and, optionally, the closed
  // non-fluid half-plane through X0
  std::vector<char> fixed(grid.size(), 0);
  const Point x0 = spec.stagnation_point();
  const Vec2 e = spec.fluid_direction();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (grid.on_boundary(i, j)) {
        fixed[grid.index(i, j)] = 1;
      } else if (params.enforce_half_plane && dot(grid.node(i, j) - x0, e) <= 1e-12 * h) {
        fixed[grid.index(i, j)] = 1;
      }
    }

  SolveResult res;
  res.final_eps = params.smoothing_eps > 0.0 ? params.smoothing_eps : std::pow(h, 1.5);
  if (bmax == 0.0) {
    res.u = u;
    res.energy = energy(spec, u, weight);
    return res;
  }

  const double omega = params.step_size > 0.0
                           ? params.step_size
                           : 2.0 / (1.0 + std::sin(std::numbers::pi / std::max(nx, ny)));
  auto values = u.values();
  auto at = [&](int i, int j) -> double& { return values[grid.index(i, j)]; };

  if (params.start_from_data) {
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i)
        if (!fixed[grid.index(i, j)]) at(i, j) = std::max(0.0, boundary_data(i, j));
  }
  // otherwise start from the harmonic extension of the data
  for (int sweep = 0; !params.start_from_data && sweep < 20 * std::max(nx, ny); ++sweep) {
    double change = 0.0;
    for (int j = 1; j < ny - 1; ++j)
      for (int i = 1; i < nx - 1; ++i) {
        if (fixed[grid.index(i, j)]) continue;
        const double S = at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1);
        double& v = at(i, j);
        const double nv = std::max(0.0, v + omega * (S / 4.0 - v));
        change = std::max(change, std::abs(nv - v));
        v = nv;
      }
    if (change < 1e-12 * bmax) break;
  }

  const std::vector<double> w = nodal_weights(spec, grid, weight);
  const double h2 = h * h;

  auto objective = [&](double eps) {
    double dir = 0.0, pot = 0.0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        if (i + 1 < nx) {
          const double d = at(i + 1, j) - at(i, j);
          dir += d * d;
        }
        if (j + 1 < ny) {
          const double d = at(i, j + 1) - at(i, j);
          dir += d * d;
        }
        if (!grid.on_boundary(i, j)) {
          const double t = at(i, j);
          pot += h2 * w[grid.index(i, j)] * std::clamp(t / eps, 0.0, 1.0);
        }
      }
    return dir + pot;
  };

  const int stages = params.continuation_stages;
  const double eps0 = std::max(params.eps_start_fraction * bmax, res.final_eps);
  int sweeps = 0;
  bool budget_hit = false;
  for (int s = 0; s < stages && !budget_hit; ++s) {
    const double eps =
        stages == 1 ? res.final_eps
                    : eps0 * std::pow(res.final_eps / eps0, double(s) / (stages - 1));
    double E = objective(eps);
    res.stage_starts.push_back(static_cast<int>(res.objective_history.size()));
    res.objective_history.push_back(E);
    while (true) {
      if (sweeps >= params.max_iters) {
        budget_hit = true;
        break;
      }
      ++sweeps;
      double delta = 0.0;
      for (int j = 1; j < ny - 1; ++j)
        for (int i = 1; i < nx - 1; ++i) {
          const std::size_t k = grid.index(i, j);
          if (fixed[k]) continue;
          const Local f{at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1),
                        h2 * w[k], eps};
          double& v = values[k];
          const double f_old = f(v);
          const double t_star = f.argmin();
          double t = v + omega * (t_star - v);
          if (params.positivity_projection) t = std::max(t, 0.0);
          double f_new = f(t);
          if (f_new > f_old) {
            t = t_star;
            f_new = f(t);
          }
          if (f_new > f_old) continue;  // rounding at a flat minimum
          delta += f_new - f_old;
          v = t;
        }
      E += delta;
      res.objective_history.push_back(E);
      if (-delta <= params.tol_energy * std::abs(E)) break;
    }
  }

  res.u = u;
  res.iterations = sweeps;
  res.converged = !budget_hit;
  res.energy = energy(spec, res.u, weight);
  return res;
}

double harmonic_residual(const ScalarField& u, double threshold) {
  const GridSpec& g = u.grid();
  const double h2 = g.spacing * g.spacing;
  double worst = 0.0;
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      if (!(u(i, j) > threshold)) continue;
      const double lap = (u(i + 1, j) + u(i - 1, j) + u(i, j + 1) + u(i, j - 1) -
                          4.0 * u(i, j)) / h2;
      worst = std::max(worst, std::abs(lap));
    }
  return worst;
}

double TestVectorField::sup_norm() const {
  double m = 0.0;
  auto a = phi1.values();
  auto b = phi2.values();
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::hypot(a[k], b[k]));
  return m;
}

TestVectorField TestVectorField::bump(const GridSpec& grid, Point centre, double radius,
                                      Vec2 v) {
  auto psi = [&](Point p) {
    const double s2 = norm2(p - centre) / (radius * radius);
    return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0;
  };
  TestVectorField t;
  t.phi1 = ScalarField::sample(grid, [&](Point p) { return v.x * psi(p); });
  t.phi2 = ScalarField::sample(grid, [&](Point p) { return v.y * psi(p); });
  t.collar = grid.bounds().distance_to_boundary(centre) - radius;
  if (t.collar <= 0.0)
    throw InvalidSpec("test vector field support reaches the domain boundary");
  return t;
}

double domain_variation_residual(const ProblemSpec& spec, const ScalarField& u,
                                 const TestVectorField& phi) {
  const GridSpec& g = u.grid();
  if (!(phi.phi1.grid() == g) || !(phi.phi2.grid() == g))
    throw InvalidGrid("test vector field lives on a different grid");
  const Reconstruction rec(u);
  const double h = g.spacing;

  // bilinear value and gradient of a raw nodal field
  auto sample = [&](const ScalarField& f, Point p, double& val, Vec2& grad) {
    double fx = std::clamp((p.x - g.origin.x) / h, 0.0, double(g.nx - 1));
    double fy = std::clamp((p.y - g.origin.y) / h, 0.0, double(g.ny - 1));
    const int i = std::min(int(fx), g.nx - 2), j = std::min(int(fy), g.ny - 2);
    const double tx = fx - i, ty = fy - j;
    const double a = f(i, j), b = f(i + 1, j), c = f(i, j + 1), d = f(i + 1, j + 1);
    val = (1 - ty) * ((1 - tx) * a + tx * b) + ty * ((1 - tx) * c + tx * d);
    grad = {((1 - ty) * (b - a) + ty * (d - c)) / h, ((1 - tx) * (c - a) + tx * (d - b)) / h};
  };

  // The terms cancel to O(h^2) in the bulk; what is left is the indicator
  // error in cut cells, hence the finer subsampling there.
  return integrate_grid(rec, [&](const Sample& s) {
    if (!s.positive) return 0.0;
    double p1, p2;
    Vec2 g1, g2;
    sample(phi.phi1, s.X, p1, g1);
    sample(phi.phi2, s.X, p2, g2);
    if (p1 == 0.0 && p2 == 0.0 && norm2(g1) == 0.0 && norm2(g2) == 0.0) return 0.0;
    const double div = g1.x + g2.y;
    const Vec2 du = s.grad;
    // du . Dphi du with Dphi = [[d1 phi1, d2 phi1], [d1 phi2, d2 phi2]]
    const double quad = du.x * (g1.x * du.x + g1.y * du.y) + du.y * (g2.x * du.x + g2.y * du.y);
    const double w = weight_at(spec, s.X);
    const Vec2 gw = weight_gradient(spec, s.X);
    return norm2(du) * div - 2.0 * quad + w * div + gw.x * p1 + gw.y * p2;
  }, DiskQuadrature{32});
}

}  // namespace cornerlab
