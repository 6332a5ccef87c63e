#include "cornerlab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cornerlab/errors.hpp"
#include "cornerlab/integration.hpp"
#include "cornerlab/weiss.hpp"

namespace cornerlab {

namespace {
constexpr double pi = std::numbers::pi;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

GridSpec reference_grid(int n) {
  GridSpec g{n, n, {-1.0, -1.0}, 2.0 / (n - 1)};
  g.validate();
  return g;
}

ScalarField rescale(const ScalarField& u, const StagnationPoint& sp, double r, int n) {
  if (!(r > 0.0)) throw RadiusOutOfRange("rescaling radius must be positive", r);
  if (!disk_inside_grid(u.grid(), sp.location, 2.0 * r))
    throw RadiusOutOfRange("B_2r around the stagnation point leaves the grid", r);
  const Reconstruction rec(u);
  const double scale = std::pow(r, sp.kappa);
  const Point c = sp.location;
  return ScalarField::sample(reference_grid(n), [&](Point X) {
    return scale * rec.at({c.x + r * X.x, c.y + r * X.y}).value;
  });
}

double homogeneity_residual(const ScalarField& u0, double degree) {
  const Reconstruction rec(u0);
  const double I = integrate_disk(rec, {0.0, 0.0}, 1.0, [&](const Sample& s) {
    if (!s.positive) return 0.0;
    const double d = s.X.x * s.grad.x + s.X.y * s.grad.y - degree * s.value;
    return d * d;
  });
  return std::sqrt(I);
}

double unit_disk_distance(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw InvalidGrid("fields live on different grids");
  const Reconstruction ra(a), rb(b);
  DiskQuadrature q;
  q.cut_subsamples = 4;
  q.subsample_all = true;
  const double I = integrate_disk(ra, {0.0, 0.0}, 1.0, [&](const Sample& s) {
    const double d = s.value - rb.at(s.X).value;
    return d * d;
  }, q);
  return std::sqrt(I);
}

std::vector<double> default_annuli(int count, double lo, double hi) {
  std::vector<double> r;
  for (int i = 0; i < count; ++i)
    r.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return r;
}

DirectionEstimate estimate_asymptotic_directions(const ScalarField& u, Point c,
                                                 const std::vector<double>& radii) {
  const Reconstruction rec(u);
  const double h = u.grid().spacing;
  std::vector<double> lows, highs;
  DirectionEstimate est;
  int full_count = 0;

  for (double rho : radii) {
    auto pos = [&](double t) {
      return rec.signed_value({c.x + rho * std::cos(t), c.y + rho * std::sin(t)}) > 0.0;
    };
    const int m = std::max(720, int(std::ceil(8.0 * pi * rho / h)));
    const double dt = 2.0 * pi / m;
    std::vector<char> flag(m);
    int npos = 0;
    for (int k = 0; k < m; ++k) npos += flag[k] = pos(-pi + k * dt);
    if (npos == 0) continue;
    if (npos == m) {
      ++full_count;
      continue;
    }
    auto refine = [&](double a, double b) {  // pos(a) != pos(b)
      const bool pa = pos(a);
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (a + b);
        if (pos(mid) == pa) a = mid; else b = mid;
      }
      return 0.5 * (a + b);
    };
    // arcs of positivity, walking counter-clockwise
    std::vector<std::pair<double, double>> arcs;
    std::vector<double> starts, ends;
    for (int k = 0; k < m; ++k) {
      const int k1 = (k + 1) % m;
      const double a = -pi + k * dt, b = a + dt;
      if (!flag[k] && flag[k1]) starts.push_back(refine(a, b));
      if (flag[k] && !flag[k1]) ends.push_back(refine(a, b));
    }
    for (double s : starts) {
      // first end after s going counter-clockwise
      double best = 0.0, gap = 1e300;
      for (double e : ends) {
        double d = e - s;
        while (d <= 0.0) d += 2.0 * pi;
        if (d < gap) { gap = d; best = s + d; }
      }
      arcs.push_back({s, best});
    }
    if (arcs.size() > 1) est.disconnected = true;
    auto widest = std::max_element(arcs.begin(), arcs.end(), [](auto& x, auto& y) {
      return x.second - x.first < y.second - y.first;
    });
    lows.push_back(widest->first);
    highs.push_back(widest->second);
  }

  if (lows.empty()) {
    if (full_count == 0) throw EmptyPositivity("no annulus meets the positivity set");
    est.full = true;
    est.theta1 = -pi;
    est.theta2 = pi;
    est.opening = 2.0 * pi;
    est.annuli_used = full_count;
    return est;
  }
  // unwrap against the first annulus
  const double ref = lows.front();
  for (std::size_t i = 0; i < lows.size(); ++i) {
    const double shift = 2.0 * pi * std::round((lows[i] - ref) / (2.0 * pi));
    lows[i] -= shift;
    highs[i] -= shift;
  }
  const double t1 = median(lows), t2 = median(highs);
  est.theta1 = wrap_angle(t1);
  est.theta2 = est.theta1 + (t2 - t1);
  est.opening = t2 - t1;
  est.annuli_used = int(lows.size());
  return est;
}

DirectionEstimate estimate_asymptotic_directions(const ScalarField& u0) {
  return estimate_asymptotic_directions(u0, {0.0, 0.0}, default_annuli());
}

BlowupResult blowup(const ProblemSpec& spec, const ScalarField& u, const StagnationPoint& sp,
                    std::vector<double> radii, int reference_nodes,
                    const std::vector<double>& annuli) {
  if (radii.empty()) throw RadiusOutOfRange("no blow-up radii given", 0.0);
  std::sort(radii.begin(), radii.end(), std::greater<>());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  BlowupResult res;
  res.radii_used = radii;
  for (double r : radii) res.rescaled_fields.push_back(rescale(u, sp, r, reference_nodes));
  for (std::size_t i = 1; i < radii.size(); ++i)
    res.successive_distance.push_back(
        unit_disk_distance(res.rescaled_fields[i - 1], res.rescaled_fields[i]));
  const ScalarField& last = res.rescaled_fields.back();
  res.homogeneity_residual = homogeneity_residual(last, homogeneity_degree(spec));
  res.density_estimate = estimate_density(spec, u, sp, radii.back());
  try {
    res.directions = estimate_asymptotic_directions(last, {0.0, 0.0}, annuli);
  } catch (const EmptyPositivity& e) {
    res.direction_error = e.what();
  }
  return res;
}

nlohmann::json BlowupResult::to_json() const {
  nlohmann::json j;
  j["radii_used"] = radii_used;
  j["successive_distance"] = successive_distance;
  j["homogeneity_residual"] = homogeneity_residual;
  j["density_estimate"] = density_estimate;
  if (directions) {
    j["directions"] = {{"theta1", directions->theta1},
                       {"theta2", directions->theta2},
                       {"opening", directions->opening},
                       {"disconnected_positivity", directions->disconnected},
                       {"full_circle", directions->full},
                       {"annuli_used", directions->annuli_used}};
  } else {
    j["directions"] = nullptr;
    j["direction_error"] = direction_error;
  }
  return j;
}

BernsteinReport check_bernstein(const ProblemSpec& spec, const ScalarField& u,
                                const StagnationPoint& sp, double r0, double C) {
  if (!(r0 > 0.0) || !(r0 < sp.delta))
    throw RadiusOutOfRange("Bernstein radius must lie in (0, delta)", r0);
  const Reconstruction rec(u);
  const ScalarField& e = rec.extension();
  const GridSpec& g = u.grid();
  const double h = g.spacing;
  BernsteinReport rep;
  rep.bound = C;
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      if (!(u(i, j) > 0.0)) continue;
      const Point p = g.node(i, j);
      if (norm2(p - sp.location) > r0 * r0) continue;
      const double w = weight_at(spec, p);
      if (!(w > 0.0)) {
        // integrated form: u is bounded by a multiple of the monomial, which
        // vanishes where the weight does
        ++rep.zero_weight_violations;
        continue;
      }
      const Vec2 grad{(e(i + 1, j) - e(i - 1, j)) / (2 * h), (e(i, j + 1) - e(i, j - 1)) / (2 * h)};
      const double ratio = norm2(grad) / w;
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst = p;
      }
    }
  rep.pass = rep.max_ratio <= C && rep.zero_weight_violations == 0;
  return rep;
}

double estimate_density(const ProblemSpec& spec, const ScalarField& u,
                        const StagnationPoint& sp, double r) {
  return limit_density(spec, u, sp, r);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Corner: return "Corner";
    case Verdict::Cusp: return "Cusp";
    case Verdict::Flat: return "Flat";
  }
  return "?";
}

OracleDensities oracle_densities(const ProblemSpec& spec) {
  OracleDensities od;
  od.full = full_ball_density(spec);
  if (spec.type() == 3) {
    od.pairs = solve_angle_pairs(spec.alpha, spec.beta);
    for (const auto& p : od.pairs) od.corner.push_back(corner_density(spec, p.theta1, p.theta2));
  } else {
    const ClosedFormProfile p = blowup_limit(spec);
    od.corner.push_back(corner_density(spec, p.theta1, p.theta2));
  }
  return od;
}

ClassificationReport classify(const ProblemSpec&, double density, const StagnationPoint&,
                              const OracleDensities& oracle) {
  ClassificationReport rep;
  rep.density_estimate = density;
  rep.full_density = oracle.full;
  rep.distance_to_zero = std::abs(density);
  rep.distance_to_full_density = std::abs(density - oracle.full);
  rep.distance_to_corner_density = 1e300;
  for (std::size_t i = 0; i < oracle.corner.size(); ++i) {
    const double d = std::abs(density - oracle.corner[i]);
    if (d < rep.distance_to_corner_density) {
      rep.distance_to_corner_density = d;
      rep.corner_density = oracle.corner[i];
      if (i < oracle.pairs.size()) rep.best_pair = oracle.pairs[i];
    }
  }
  const double dc = rep.distance_to_corner_density, dz = rep.distance_to_zero,
               df = rep.distance_to_full_density;
  if (dc <= dz && dc <= df) {
    rep.verdict = Verdict::Corner;
    rep.theoretical_note = "corner profile; the only singular profile admitted for weak solutions";
  } else if (dz <= df) {
    rep.verdict = Verdict::Cusp;
    rep.theoretical_note =
        "cusp profile (zero density): theoretically excluded for exact weak solutions, "
        "the cusp set is empty; treat as a resolution or data artifact";
  } else {
    rep.verdict = Verdict::Flat;
    rep.theoretical_note =
        "flat profile (full density): theoretically excluded for exact weak solutions by the "
        "frequency lower bound, the flat set is empty; treat as a resolution or data artifact";
  }
  return rep;
}

nlohmann::json ClassificationReport::to_json() const {
  nlohmann::json j;
  j["verdict"] = to_string(verdict);
  j["density_estimate"] = density_estimate;
  j["distance_to_corner_density"] = distance_to_corner_density;
  j["distance_to_zero"] = distance_to_zero;
  j["distance_to_full_density"] = distance_to_full_density;
  j["corner_density"] = corner_density;
  j["full_density"] = full_density;
  if (best_pair)
    j["best_pair"] = {{"theta1", best_pair->theta1},
                      {"theta2", best_pair->theta2},
                      {"symmetric", best_pair->symmetric}};
  j["theoretical_note"] = theoretical_note;
  return j;
}

}  // namespace cornerlab
