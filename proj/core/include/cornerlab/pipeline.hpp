#pragma once

// Configuration-driven orchestration: build a problem, solve, analyze,
// classify and write the reports.
//
// Configs are JSON with // and /* */ comments allowed. Every report embeds
// the resolved config (defaults filled in), which parses back to the same
// PipelineConfig.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerlab/blowup.hpp"
#include "cornerlab/domain.hpp"
#include "cornerlab/energy.hpp"
#include "cornerlab/errors.hpp"
#include "cornerlab/frequency.hpp"
#include "cornerlab/oracle.hpp"
#include "cornerlab/weiss.hpp"

namespace cornerlab {

enum class Stage { Config, Solve, Analyze, Classify, Table1 };
std::string to_string(Stage s);

/// 2 for configuration problems, 3 for the solver, 4 for analysis.
int exit_code(Stage s);

/// An error tagged with the pipeline stage that raised it.
class PipelineError : public Error {
 public:
  PipelineError(Stage stage, std::string kind, const std::string& what)
      : Error(what), stage_(stage), kind_(std::move(kind)) {}
  Stage stage() const { return stage_; }
  const std::string& kind() const { return kind_; }
  int exit_code() const { return cornerlab::exit_code(stage_); }
  nlohmann::json record() const;

 private:
  Stage stage_;
  std::string kind_;
};

enum class BoundarySource { Oracle, Field, Zero };

struct RadiusSweep {
  std::vector<double> radii;  ///< explicit list; overrides the range below
  double r_min = 0.05;
  double r_max = 0.45;
  int count = 32;
  bool log_spaced = true;

  std::vector<double> resolve() const;
};

struct AnalysisConfig {
  RadiusSweep weiss;
  RadiusSweep frequency;
  std::vector<double> blowup_radii{0.5, 0.4, 0.32, 0.256, 0.2048, 0.16384};
  int reference_nodes = 129;
  int annulus_count = 8;
  double annulus_min = 0.2;
  double annulus_max = 0.9;
  double monotonicity_tol = 5e-3;
  double frequency_tol = 0.05;
  RemainderMode remainder_mode = RemainderMode::Scaled;
  double bernstein_radius = 0.0;  ///< 0 -> delta / 2
  double bernstein_constant = 1.05;
};

struct OutputConfig {
  std::filesystem::path directory = "out";
  bool csv = true;
  bool json = true;
  bool svg = true;
};

struct PipelineConfig {
  ProblemSpec problem;
  GridSpec grid;
  std::optional<double> delta;
  BoundarySource boundary = BoundarySource::Oracle;
  std::filesystem::path boundary_field;  ///< for BoundarySource::Field
  SolverParams solver;
  AnalysisConfig analysis;
  OutputConfig outputs;
  bool oracle_only = false;
  std::vector<ProblemSpec> table1_rows;  ///< empty -> default_table1_rows()

  /// Throws ConfigError naming the first offending field.
  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig parse(const std::string& text);
  static PipelineConfig load(const std::filesystem::path& path);

  nlohmann::json to_json() const;
  void validate() const;
};

/// Output format list such as "csv,json,svg".
void set_formats(OutputConfig& out, const std::string& list);

/// Type 3 specs select the admissible pair whose bisector is closest to
/// theta_star; Types 1 and 2 return nothing.
std::optional<AnglePair> seed_pair(const ProblemSpec& spec);

/// Closed-form blow-up limit of the spec placed at its stagnation point.
ScalarField oracle_field(const ProblemSpec& spec, const GridSpec& grid);

struct Table1Row {
  int type = 0;
  std::string subcase;
  std::string location;
  std::string force_direction;  ///< "3pi/2", "pi/2", "0", "pi" or "N/A"
  double opening = 0.0;
  double density = 0.0;
  std::string profile;  ///< "symmetric corner" or the pair for Type 3
};

/// Nine subcases: Type 1 (1.1-1.4), Type 2 (2.1-2.4) and Type 3.
std::vector<ProblemSpec> default_table1_rows();
std::vector<Table1Row> table1_rows(const std::vector<ProblemSpec>& specs);
std::string table1_report(const std::vector<ProblemSpec>& specs);

struct SolveStageResult {
  ScalarField field;
  bool solver_ran = false;
  bool converged = true;
  int iterations = 0;
  double energy = 0.0;
  double oracle_energy = 0.0;
  double seconds = 0.0;
};

struct AnalysisStageResult {
  WeissProfile weiss;
  MonotonicityReport monotonicity;
  std::optional<FrequencyProfile> frequency;
  std::optional<FrequencyBoundReport> frequency_bound;
  std::string frequency_error;
  BlowupResult blowup;
  BernsteinReport bernstein;
};

/// Files written by a stage, relative to the output directory.
struct StageOutput {
  std::vector<std::string> files;
};

SolveStageResult run_solve(const PipelineConfig& cfg);
AnalysisStageResult run_analysis(const PipelineConfig& cfg, const ScalarField& u);
ClassificationReport run_classification(const PipelineConfig& cfg, const ScalarField& u,
                                        const BlowupResult* blowup = nullptr);

/// Stage drivers writing into cfg.outputs.directory. Library errors are
/// rethrown as PipelineError tagged with the stage.
StageOutput write_solve(const PipelineConfig& cfg);
StageOutput write_analysis(const PipelineConfig& cfg, const std::filesystem::path& field);
StageOutput write_classification(const PipelineConfig& cfg, const std::filesystem::path& field);
StageOutput write_table1(const PipelineConfig& cfg);
StageOutput write_all(const PipelineConfig& cfg);

/// Writes error.json into the output directory (best effort).
void write_error_record(const std::filesystem::path& dir, const PipelineError& e);

}  // namespace cornerlab
