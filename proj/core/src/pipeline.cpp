#include "cornerlab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "cornerlab/field_io.hpp"
#include "cornerlab/integration.hpp"
#include "cornerlab/svg.hpp"

namespace cornerlab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError(where + ": unknown field '" + it.key() + "'");
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": field '" + key + "' has the wrong type");
  }
}

RadiusSweep sweep_from_json(const json& j, RadiusSweep s, const std::string& where) {
  if (j.is_array()) {
    s.radii = j.get<std::vector<double>>();
    return s;
  }
  check_keys(j, {"r_min", "r_max", "count", "log_spaced"}, where);
  s.radii.clear();
  s.r_min = get_or(j, "r_min", s.r_min, where);
  s.r_max = get_or(j, "r_max", s.r_max, where);
  s.count = get_or(j, "count", s.count, where);
  s.log_spaced = get_or(j, "log_spaced", s.log_spaced, where);
  return s;
}

json sweep_to_json(const RadiusSweep& s) {
  if (!s.radii.empty()) return s.radii;
  return {{"r_min", s.r_min}, {"r_max", s.r_max}, {"count", s.count},
          {"log_spaced", s.log_spaced}};
}

std::string boundary_name(BoundarySource b) {
  switch (b) {
    case BoundarySource::Oracle: return "oracle";
    case BoundarySource::Field: return "field";
    case BoundarySource::Zero: return "zero";
  }
  return "?";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const InvalidSpec*>(&e)) return "InvalidSpec";
  if (dynamic_cast<const InvalidGrid*>(&e)) return "InvalidGrid";
  if (dynamic_cast<const InvalidBoundary*>(&e)) return "InvalidBoundary";
  if (dynamic_cast<const RadiusOutOfRange*>(&e)) return "RadiusOutOfRange";
  if (dynamic_cast<const DegenerateDenominator*>(&e)) return "DegenerateDenominator";
  if (dynamic_cast<const EmptyPositivity*>(&e)) return "EmptyPositivity";
  if (dynamic_cast<const InvalidPair*>(&e)) return "InvalidPair";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const FormatError*>(&e)) return "FormatError";
  if (dynamic_cast<const json::exception*>(&e)) return "FormatError";
  return "Error";
}

// Runs f, rethrowing library failures as PipelineError of the given stage.
// Configuration errors keep their own stage wherever they surface.
template <class F>
auto in_stage(Stage stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const ConfigError& e) {
    throw PipelineError(Stage::Config, "ConfigError", e.what());
  } catch (const std::exception& e) {
    throw PipelineError(stage, error_kind(e), e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw FormatError("write to '" + path.string() + "' failed");
}

std::string force_label(const ProblemSpec& spec) {
  const auto t = spec.force_direction();
  if (!t) return "N/A";
  const double v = *t;
  if (std::abs(v) < 1e-12) return "0";
  if (std::abs(v - pi / 2) < 1e-12) return "pi/2";
  if (std::abs(v - pi) < 1e-12) return "pi";
  return "3pi/2";
}

json solve_summary(const SolveStageResult& s) {
  return {{"solver_ran", s.solver_ran},
          {"converged", s.converged},
          {"iterations", s.iterations},
          {"energy", s.energy},
          {"oracle_energy", s.oracle_energy}};
}

json analysis_summary(const AnalysisStageResult& a) {
  json j;
  j["monotonicity"] = {{"pass", a.monotonicity.pass},
                       {"worst_violation", a.monotonicity.worst_violation},
                       {"worst_index", a.monotonicity.worst_index},
                       {"worst_in_J1", a.monotonicity.worst_in_J1},
                       {"M_violations", a.monotonicity.M_violations},
                       {"J1_violations", a.monotonicity.J1_violations}};
  if (a.frequency_bound) {
    j["frequency_bound"] = {{"pass", a.frequency_bound->pass},
                            {"bound", a.frequency_bound->bound},
                            {"min_H", a.frequency_bound->min_H},
                            {"violations", a.frequency_bound->violations}};
  } else {
    j["frequency_bound"] = nullptr;
    j["frequency_error"] = a.frequency_error;
  }
  j["bernstein"] = {{"pass", a.bernstein.pass},
                    {"max_ratio", a.bernstein.max_ratio},
                    {"bound", a.bernstein.bound},
                    {"worst", {a.bernstein.worst.x, a.bernstein.worst.y}},
                    {"zero_weight_violations", a.bernstein.zero_weight_violations}};
  j["blowup"] = a.blowup.to_json();
  return j;
}

StagnationPoint stagnation(const PipelineConfig& cfg) {
  return stagnation_point_for(cfg.problem, cfg.delta);
}

ScalarField load_analysis_field(const fs::path& path) {
  return in_stage(Stage::Analyze, [&] { return load_field(path.string()).field; });
}

std::string plot(const PipelineConfig& cfg, const ScalarField& u) {
  SvgOverlay ov;
  ov.stagnation = cfg.problem.stagnation_point();
  const ClosedFormProfile p = blowup_limit(cfg.problem, seed_pair(cfg.problem));
  ov.edge_angles = {p.theta1, p.theta2};
  ov.title = "u with free boundary and predicted cone edges";
  return render_svg(u, ov);
}

}  // namespace

std::string to_string(Stage s) {
  switch (s) {
    case Stage::Config: return "config";
    case Stage::Solve: return "solve";
    case Stage::Analyze: return "analyze";
    case Stage::Classify: return "classify";
    case Stage::Table1: return "table1";
  }
  return "?";
}

int exit_code(Stage s) {
  switch (s) {
    case Stage::Config: return 2;
    case Stage::Solve: return 3;
    default: return 4;
  }
}

json PipelineError::record() const {
  return {{"error",
           {{"stage", to_string(stage_)},
            {"kind", kind_},
            {"message", what()},
            {"exit_code", exit_code()}}}};
}

std::vector<double> RadiusSweep::resolve() const {
  if (!radii.empty()) return radii;
  if (count < 2) throw ConfigError("radius sweep needs count >= 2");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw ConfigError("radius sweep needs 0 < r_min < r_max");
  if (log_spaced) return cornerlab::log_spaced(r_min, r_max, count);
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i) r[i] = r_min + (r_max - r_min) * i / (count - 1);
  return r;
}

void set_formats(OutputConfig& out, const std::string& list) {
  out.csv = out.json = out.svg = false;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item == "csv") out.csv = true;
    else if (item == "json") out.json = true;
    else if (item == "svg") out.svg = true;
    else if (!item.empty()) throw ConfigError("outputs.formats: unknown format '" + item + "'");
  }
}

PipelineConfig PipelineConfig::from_json(const json& j) {
  check_keys(j, {"problem", "grid", "delta", "boundary", "solver", "analysis", "outputs",
                 "oracle_only", "table1"},
             "config");
  PipelineConfig c;
  if (!j.contains("problem")) throw ConfigError("config: missing field 'problem'");
  const json& pj = j.at("problem");
  check_keys(pj, {"alpha", "beta", "weight_constant", "domain", "stag_type"}, "problem");
  c.problem = problem_from_json(pj);

  if (!j.contains("grid")) throw ConfigError("config: missing field 'grid'");
  const json& gj = j.at("grid");
  if (gj.is_object() && gj.contains("n")) {
    check_keys(gj, {"n"}, "grid");
    const int n = get_or(gj, "n", 0, "grid");
    try {
      c.grid = GridSpec::covering(c.problem.domain, n);
    } catch (const InvalidGrid& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  } else {
    check_keys(gj, {"nx", "ny", "origin", "spacing"}, "grid");
    c.grid = grid_from_json(gj);
  }
  if (j.contains("delta")) c.delta = get_or(j, "delta", 0.0, "config");

  if (j.contains("boundary")) {
    const json& bj = j.at("boundary");
    check_keys(bj, {"source", "path"}, "boundary");
    const auto src = get_or<std::string>(bj, "source", "oracle", "boundary");
    if (src == "oracle") c.boundary = BoundarySource::Oracle;
    else if (src == "field") c.boundary = BoundarySource::Field;
    else if (src == "zero") c.boundary = BoundarySource::Zero;
    else throw ConfigError("boundary: source must be oracle, field or zero");
    c.boundary_field = get_or<std::string>(bj, "path", "", "boundary");
    if (c.boundary == BoundarySource::Field && c.boundary_field.empty())
      throw ConfigError("boundary: missing field 'path'");
  }

  if (j.contains("solver")) {
    const json& sj = j.at("solver");
    const std::string w = "solver";
    check_keys(sj, {"smoothing_eps", "step_size", "max_iters", "tol_energy",
                    "positivity_projection", "enforce_half_plane", "continuation_stages",
                    "eps_start_fraction", "initial_guess"},
               w);
    SolverParams& s = c.solver;
    s.smoothing_eps = get_or(sj, "smoothing_eps", s.smoothing_eps, w);
    s.step_size = get_or(sj, "step_size", s.step_size, w);
    s.max_iters = get_or(sj, "max_iters", s.max_iters, w);
    s.tol_energy = get_or(sj, "tol_energy", s.tol_energy, w);
    s.positivity_projection = get_or(sj, "positivity_projection", s.positivity_projection, w);
    s.enforce_half_plane = get_or(sj, "enforce_half_plane", s.enforce_half_plane, w);
    s.continuation_stages = get_or(sj, "continuation_stages", s.continuation_stages, w);
    s.eps_start_fraction = get_or(sj, "eps_start_fraction", s.eps_start_fraction, w);
    const auto guess = get_or<std::string>(sj, "initial_guess", "harmonic", w);
    if (guess == "harmonic") s.start_from_data = false;
    else if (guess == "data") s.start_from_data = true;
    else throw ConfigError("solver: initial_guess must be harmonic or data");
  }

  if (j.contains("analysis")) {
    const json& aj = j.at("analysis");
    const std::string w = "analysis";
    check_keys(aj, {"weiss_radii", "frequency_radii", "blowup_radii", "reference_nodes",
                    "annuli", "monotonicity_tol", "frequency_tol", "remainder_mode",
                    "bernstein"},
               w);
    AnalysisConfig& a = c.analysis;
    if (aj.contains("weiss_radii"))
      a.weiss = sweep_from_json(aj.at("weiss_radii"), a.weiss, w + ".weiss_radii");
    if (aj.contains("frequency_radii"))
      a.frequency = sweep_from_json(aj.at("frequency_radii"), a.frequency, w + ".frequency_radii");
    a.blowup_radii = get_or(aj, "blowup_radii", a.blowup_radii, w);
    a.reference_nodes = get_or(aj, "reference_nodes", a.reference_nodes, w);
    if (aj.contains("annuli")) {
      const json& an = aj.at("annuli");
      check_keys(an, {"count", "min", "max"}, w + ".annuli");
      a.annulus_count = get_or(an, "count", a.annulus_count, w + ".annuli");
      a.annulus_min = get_or(an, "min", a.annulus_min, w + ".annuli");
      a.annulus_max = get_or(an, "max", a.annulus_max, w + ".annuli");
    }
    a.monotonicity_tol = get_or(aj, "monotonicity_tol", a.monotonicity_tol, w);
    a.frequency_tol = get_or(aj, "frequency_tol", a.frequency_tol, w);
    if (aj.contains("remainder_mode"))
      a.remainder_mode = remainder_mode_from_string(get_or<std::string>(aj, "remainder_mode", "", w));
    if (aj.contains("bernstein")) {
      const json& bj = aj.at("bernstein");
      check_keys(bj, {"radius", "constant"}, w + ".bernstein");
      a.bernstein_radius = get_or(bj, "radius", a.bernstein_radius, w + ".bernstein");
      a.bernstein_constant = get_or(bj, "constant", a.bernstein_constant, w + ".bernstein");
    }
  }

  if (j.contains("outputs")) {
    const json& oj = j.at("outputs");
    check_keys(oj, {"directory", "formats"}, "outputs");
    c.outputs.directory = get_or<std::string>(oj, "directory", "out", "outputs");
    if (oj.contains("formats")) {
      const auto f = get_or<std::vector<std::string>>(oj, "formats", {}, "outputs");
      std::string list;
      for (const auto& s : f) list += s + ",";
      set_formats(c.outputs, list);
    }
  }
  c.oracle_only = get_or(j, "oracle_only", false, "config");

  if (j.contains("table1")) {
    const json& tj = j.at("table1");
    check_keys(tj, {"rows"}, "table1");
    if (tj.contains("rows")) {
      if (!tj.at("rows").is_array()) throw ConfigError("table1: rows must be a list");
      for (const auto& r : tj.at("rows")) c.table1_rows.push_back(problem_from_json(r));
    }
  }
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

json PipelineConfig::to_json() const {
  json j;
  j["problem"] = cornerlab::to_json(problem);
  j["grid"] = cornerlab::to_json(grid);
  if (delta) j["delta"] = *delta;
  j["boundary"] = {{"source", boundary_name(boundary)}};
  if (boundary == BoundarySource::Field) j["boundary"]["path"] = boundary_field.string();
  j["solver"] = {{"smoothing_eps", solver.smoothing_eps},
                 {"step_size", solver.step_size},
                 {"max_iters", solver.max_iters},
                 {"tol_energy", solver.tol_energy},
                 {"positivity_projection", solver.positivity_projection},
                 {"enforce_half_plane", solver.enforce_half_plane},
                 {"continuation_stages", solver.continuation_stages},
                 {"eps_start_fraction", solver.eps_start_fraction},
                 {"initial_guess", solver.start_from_data ? "data" : "harmonic"}};
  j["analysis"] = {{"weiss_radii", sweep_to_json(analysis.weiss)},
                   {"frequency_radii", sweep_to_json(analysis.frequency)},
                   {"blowup_radii", analysis.blowup_radii},
                   {"reference_nodes", analysis.reference_nodes},
                   {"annuli",
                    {{"count", analysis.annulus_count},
                     {"min", analysis.annulus_min},
                     {"max", analysis.annulus_max}}},
                   {"monotonicity_tol", analysis.monotonicity_tol},
                   {"frequency_tol", analysis.frequency_tol},
                   {"remainder_mode", cornerlab::to_string(analysis.remainder_mode)},
                   {"bernstein",
                    {{"radius", analysis.bernstein_radius},
                     {"constant", analysis.bernstein_constant}}}};
  json formats = json::array();
  if (outputs.csv) formats.push_back("csv");
  if (outputs.json) formats.push_back("json");
  if (outputs.svg) formats.push_back("svg");
  j["outputs"] = {{"directory", outputs.directory.string()}, {"formats", formats}};
  j["oracle_only"] = oracle_only;
  if (!table1_rows.empty()) {
    json rows = json::array();
    for (const auto& r : table1_rows) rows.push_back(cornerlab::to_json(r));
    j["table1"] = {{"rows", rows}};
  }
  return j;
}

void PipelineConfig::validate() const {
  try {
    problem.validate();
    grid.validate();
    solver.validate();
    for (const auto& r : table1_rows) r.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const Rect gb = grid.bounds();
  const Rect& d = problem.domain;
  const double tol = 1e-9 * std::max(1.0, std::max(d.width(), d.height()));
  if (std::abs(gb.xmin - d.xmin) > tol || std::abs(gb.ymin - d.ymin) > tol ||
      std::abs(gb.xmax - d.xmax) > tol || std::abs(gb.ymax - d.ymax) > tol)
    throw ConfigError("grid: does not cover problem.domain exactly");
  if (delta && !(*delta > 0.0)) throw ConfigError("delta: must be positive");

  const StagnationPoint sp = stagnation_point_for(problem, delta);
  auto check_sweep = [&](const RadiusSweep& s, const std::string& name) {
    const auto r = s.resolve();
    if (r.empty()) throw ConfigError(name + ": no radii");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!(r[i] > 0.0) || !(r[i] < sp.delta))
        throw ConfigError(name + ": radius " + format_real(r[i]) + " outside (0, delta)");
      if (i && !(r[i] > r[i - 1])) throw ConfigError(name + ": radii must increase");
    }
  };
  check_sweep(analysis.weiss, "analysis.weiss_radii");
  check_sweep(analysis.frequency, "analysis.frequency_radii");
  if (analysis.blowup_radii.empty()) throw ConfigError("analysis.blowup_radii: no radii");
  for (double r : analysis.blowup_radii)
    if (!(r > 0.0) || !disk_inside_grid(grid, sp.location, 2.0 * r))
      throw ConfigError("analysis.blowup_radii: B_2r around the stagnation point leaves the grid "
                        "for r = " + format_real(r));
  if (analysis.reference_nodes < 16) throw ConfigError("analysis.reference_nodes: need >= 16");
  if (analysis.annulus_count < 1 || !(analysis.annulus_min > 0.0) ||
      !(analysis.annulus_max < 1.0) || analysis.annulus_max < analysis.annulus_min)
    throw ConfigError("analysis.annuli: need count >= 1 and 0 < min <= max < 1");
  if (!(analysis.monotonicity_tol >= 0.0)) throw ConfigError("analysis.monotonicity_tol: negative");
  if (!(analysis.frequency_tol >= 0.0)) throw ConfigError("analysis.frequency_tol: negative");
  if (analysis.bernstein_radius < 0.0 || analysis.bernstein_radius >= sp.delta)
    throw ConfigError("analysis.bernstein.radius: outside [0, delta)");
  if (outputs.directory.empty()) throw ConfigError("outputs.directory: empty");
}

std::optional<AnglePair> seed_pair(const ProblemSpec& spec) {
  if (spec.type() != 3) return std::nullopt;
  const double target = std::get<Type3>(spec.stag).theta_star;
  const auto pairs = solve_angle_pairs(spec.alpha, spec.beta);
  if (pairs.empty()) throw InvalidPair("no admissible angle pair");
  const auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return std::abs(wrap_angle(a.bisector() - target)) < std::abs(wrap_angle(b.bisector() - target));
  });
  return *best;
}

ScalarField oracle_field(const ProblemSpec& spec, const GridSpec& grid) {
  const ClosedFormProfile p = blowup_limit(spec, seed_pair(spec));
  const Point x0 = spec.stagnation_point();
  return ScalarField::sample(grid, [&](Point X) { return evaluate_blowup_limit(p, X - x0); });
}

std::vector<ProblemSpec> default_table1_rows() {
  auto make = [](double a, double b, StagnationType st) {
    ProblemSpec s;
    s.alpha = a;
    s.beta = b;
    s.stag = st;
    const Point x0 = s.stagnation_point();
    s.domain = {x0.x - 1.0, x0.y - 1.0, x0.x + 1.0, x0.y + 1.0};
    return s;
  };
  return {
      make(0, 1, Type1{-1.0, Force::Down}),   make(0, 1, Type1{1.0, Force::Up}),
      make(0, 1, Type1{-1.0, Force::Up}),     make(0, 1, Type1{1.0, Force::Down}),
      make(1, 0, Type2{-1.0, Force::Left}),   make(1, 0, Type2{1.0, Force::Right}),
      make(1, 0, Type2{-1.0, Force::Right}),  make(1, 0, Type2{1.0, Force::Left}),
      make(2, 1, Type3{0.0}),
  };
}

std::vector<Table1Row> table1_rows(const std::vector<ProblemSpec>& specs) {
  std::vector<Table1Row> rows;
  for (const auto& spec : specs) {
    const auto pair = seed_pair(spec);
    const ClosedFormProfile p = blowup_limit(spec, pair);
    Table1Row r;
    r.type = spec.type();
    r.subcase = r.type == 3 ? "3" : std::to_string(r.type) + "." + std::to_string(spec.subcase());
    const Point x0 = spec.stagnation_point();
    r.location = "(" + format_real(x0.x) + " " + format_real(x0.y) + ")";
    r.force_direction = force_label(spec);
    const double e = r.type == 1 ? spec.beta : r.type == 2 ? spec.alpha : spec.alpha + spec.beta;
    r.opening = 2.0 * pi / (e + 2.0);
    r.density = corner_density(spec, p.theta1, p.theta2);
    r.profile = pair ? "pair (" + format_real(pair->theta1) + " " + format_real(pair->theta2) + ")"
                     : "symmetric corner";
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string table1_report(const std::vector<ProblemSpec>& specs) {
  std::ostringstream os;
  os << "type,subcase,alpha,beta,stagnation_point,force_direction,opening,density,profile\n";
  const auto rows = table1_rows(specs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << r.type << ',' << r.subcase << ',' << format_real(specs[i].alpha) << ','
       << format_real(specs[i].beta) << ',' << r.location << ',' << r.force_direction << ','
       << format_real(r.opening) << ',' << format_real(r.density) << ',' << r.profile << '\n';
  }
  return os.str();
}

SolveStageResult run_solve(const PipelineConfig& cfg) {
  return in_stage(Stage::Solve, [&] {
    SolveStageResult out;
    const ScalarField oracle = oracle_field(cfg.problem, cfg.grid);
    out.oracle_energy = energy(cfg.problem, oracle);
    if (cfg.oracle_only) {
      out.field = oracle;
      out.energy = out.oracle_energy;
      return out;
    }
    ScalarField data;
    switch (cfg.boundary) {
      case BoundarySource::Oracle: data = oracle; break;
      case BoundarySource::Zero: data = ScalarField(cfg.grid, 0.0); break;
      case BoundarySource::Field: {
        data = load_field(cfg.boundary_field.string()).field;
        if (!(data.grid() == cfg.grid))
          throw InvalidBoundary("boundary field grid differs from the configured grid");
        break;
      }
    }
    const SolveResult res = minimize_energy(cfg.problem, cfg.grid, data, cfg.solver);
    out.field = res.u;
    out.solver_ran = true;
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.energy = res.energy;
    return out;
  });
}

AnalysisStageResult run_analysis(const PipelineConfig& cfg, const ScalarField& u) {
  return in_stage(Stage::Analyze, [&] {
    const StagnationPoint sp = stagnation(cfg);
    const AnalysisConfig& a = cfg.analysis;
    AnalysisStageResult out;
    out.weiss = weiss_profile(cfg.problem, u, sp, a.weiss.resolve());
    out.monotonicity = check_monotonicity(out.weiss, a.monotonicity_tol);
    try {
      out.frequency = frequency_profile(cfg.problem, u, sp, a.frequency.resolve(), a.remainder_mode);
      out.frequency_bound =
          check_frequency_bound(*out.frequency, frequency_exponent(cfg.problem), a.frequency_tol);
    } catch (const DegenerateDenominator& e) {
      // the frequency is undefined once u vanishes on a circle; not fatal
      out.frequency_error = std::string(e.what()) + " at r = " + format_real(e.radius());
    }
    out.blowup = blowup(cfg.problem, u, sp, a.blowup_radii, a.reference_nodes,
                        default_annuli(a.annulus_count, a.annulus_min, a.annulus_max));
    const double r0 = a.bernstein_radius > 0.0 ? a.bernstein_radius : 0.5 * sp.delta;
    out.bernstein = check_bernstein(cfg.problem, u, sp, r0, a.bernstein_constant);
    return out;
  });
}

ClassificationReport run_classification(const PipelineConfig& cfg, const ScalarField& u,
                                        const BlowupResult* b) {
  return in_stage(Stage::Classify, [&] {
    const StagnationPoint sp = stagnation(cfg);
    double density = 0.0;
    if (b) {
      density = b->density_estimate;
    } else {
      const auto& radii = cfg.analysis.blowup_radii;
      density = estimate_density(cfg.problem, u, sp, *std::min_element(radii.begin(), radii.end()));
    }
    return classify(cfg.problem, density, sp, oracle_densities(cfg.problem));
  });
}

namespace {

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw PipelineError(Stage::Config, "ConfigError",
                        "outputs.directory: cannot create '" + dir.string() + "'");
}

json report_base(const PipelineConfig& cfg, const std::string& verb) {
  return {{"verb", verb}, {"config", cfg.to_json()}};
}

void emit(const PipelineConfig& cfg, StageOutput& out, Stage stage, const std::string& name,
          const std::string& text) {
  in_stage(stage, [&] {
    write_text(cfg.outputs.directory / name, text);
    return 0;
  });
  out.files.push_back(name);
}

void emit_analysis(const PipelineConfig& cfg, const AnalysisStageResult& a, StageOutput& out) {
  if (cfg.outputs.csv) {
    emit(cfg, out, Stage::Analyze, "weiss_profile.csv", a.weiss.to_csv());
    if (a.frequency) emit(cfg, out, Stage::Analyze, "frequency_profile.csv", a.frequency->to_csv());
  }
  if (cfg.outputs.json)
    emit(cfg, out, Stage::Analyze, "blowup.json", dump_json(a.blowup.to_json()) + "\n");
}

}  // namespace

StageOutput write_solve(const PipelineConfig& cfg) {
  ensure_directory(cfg.outputs.directory);
  StageOutput out;
  const SolveStageResult s = run_solve(cfg);
  std::ostringstream field;
  write_field(field, s.field, field_metadata(cfg.problem));
  emit(cfg, out, Stage::Solve, "solution.field", field.str());
  if (cfg.outputs.svg) emit(cfg, out, Stage::Solve, "solution.svg", plot(cfg, s.field));
  if (cfg.outputs.json) {
    json r = report_base(cfg, "solve");
    r["solve"] = solve_summary(s);
    r["files"] = out.files;
    emit(cfg, out, Stage::Solve, "report.json", dump_json(r) + "\n");
  }
  return out;
}

StageOutput write_analysis(const PipelineConfig& cfg, const fs::path& field) {
  ensure_directory(cfg.outputs.directory);
  const ScalarField u = load_analysis_field(field);
  StageOutput out;
  const AnalysisStageResult a = run_analysis(cfg, u);
  emit_analysis(cfg, a, out);
  if (cfg.outputs.json) {
    json r = report_base(cfg, "analyze");
    r["field"] = field.string();
    r["analysis"] = analysis_summary(a);
    r["files"] = out.files;
    emit(cfg, out, Stage::Analyze, "report.json", dump_json(r) + "\n");
  }
  return out;
}

StageOutput write_classification(const PipelineConfig& cfg, const fs::path& field) {
  ensure_directory(cfg.outputs.directory);
  const ScalarField u = load_analysis_field(field);
  StageOutput out;
  const ClassificationReport c = run_classification(cfg, u);
  if (cfg.outputs.json)
    emit(cfg, out, Stage::Classify, "classification.json", dump_json(c.to_json()) + "\n");
  return out;
}

StageOutput write_table1(const PipelineConfig& cfg) {
  ensure_directory(cfg.outputs.directory);
  StageOutput out;
  const auto specs = cfg.table1_rows.empty() ? default_table1_rows() : cfg.table1_rows;
  const std::string csv = in_stage(Stage::Table1, [&] { return table1_report(specs); });
  emit(cfg, out, Stage::Table1, "table1.csv", csv);
  return out;
}

StageOutput write_all(const PipelineConfig& cfg) {
  ensure_directory(cfg.outputs.directory);
  StageOutput out;
  const SolveStageResult s = run_solve(cfg);
  std::ostringstream field;
  write_field(field, s.field, field_metadata(cfg.problem));
  emit(cfg, out, Stage::Solve, "solution.field", field.str());

  const AnalysisStageResult a = run_analysis(cfg, s.field);
  emit_analysis(cfg, a, out);
  const ClassificationReport c = run_classification(cfg, s.field, &a.blowup);
  if (cfg.outputs.json)
    emit(cfg, out, Stage::Classify, "classification.json", dump_json(c.to_json()) + "\n");

  const auto specs = cfg.table1_rows.empty() ? default_table1_rows() : cfg.table1_rows;
  if (cfg.outputs.csv)
    emit(cfg, out, Stage::Table1, "table1.csv",
         in_stage(Stage::Table1, [&] { return table1_report(specs); }));
  if (cfg.outputs.svg)
    emit(cfg, out, Stage::Analyze, "solution.svg", in_stage(Stage::Analyze, [&] {
           return plot(cfg, s.field);
         }));
  if (cfg.outputs.json) {
    json r = report_base(cfg, "run");
    r["solve"] = solve_summary(s);
    r["analysis"] = analysis_summary(a);
    r["classification"] = c.to_json();
    r["files"] = out.files;
    emit(cfg, out, Stage::Classify, "report.json", dump_json(r) + "\n");
  }
  return out;
}

void write_error_record(const fs::path& dir, const PipelineError& e) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream os(dir / "error.json", std::ios::binary);
  if (os) os << dump_json(e.record()) << '\n';
}

}  // namespace cornerlab
