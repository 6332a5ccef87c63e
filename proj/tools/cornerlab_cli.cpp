// cornerlab: solve, analyze and classify stagnation-point free boundary
// problems from a config file.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cornerlab/field_io.hpp"
#include "cornerlab/pipeline.hpp"

namespace fs = std::filesystem;
using namespace cornerlab;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string formats;
  std::string field;
  bool oracle_only = false;
  bool quiet = false;
};

void add_common(CLI::App* cmd, Options& o, bool with_field) {
  cmd->add_option("-c,--config", o.config, "Pipeline config (JSON, comments allowed)")
      ->required();
  cmd->add_option("-o,--out", o.out, "Output directory (overrides outputs.directory)");
  cmd->add_option("--format", o.formats, "Comma separated subset of csv,json,svg");
  cmd->add_flag("--oracle-only", o.oracle_only,
                "Skip the solver and use the closed-form blow-up limit as the field");
  cmd->add_flag("-q,--quiet", o.quiet, "Do not list written files");
  if (with_field)
    cmd->add_option("--field", o.field, "Field file to analyze (default: OUT/solution.field)");
}

PipelineConfig resolve(const Options& o) {
  PipelineConfig cfg = PipelineConfig::load(o.config);
  if (!o.out.empty()) cfg.outputs.directory = o.out;
  if (!o.formats.empty()) set_formats(cfg.outputs, o.formats);
  if (o.oracle_only) cfg.oracle_only = true;
  return cfg;
}

fs::path field_path(const Options& o, const PipelineConfig& cfg) {
  return o.field.empty() ? cfg.outputs.directory / "solution.field" : fs::path(o.field);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cornerlab: stagnation points of Bernoulli-type free boundary problems"};
  app.require_subcommand(1);
  Options opt;

  auto* solve = app.add_subcommand("solve", "Minimize the energy and write solution.field");
  auto* analyze = app.add_subcommand("analyze", "Weiss, frequency and blow-up analysis of a field");
  auto* classify = app.add_subcommand("classify", "Corner / cusp / flat verdict for a field");
  auto* table1 = app.add_subcommand("table1", "Closed-form opening angles and densities per subcase");
  auto* run = app.add_subcommand("run", "All stages");
  add_common(solve, opt, false);
  add_common(analyze, opt, true);
  add_common(classify, opt, true);
  add_common(table1, opt, false);
  add_common(run, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(Stage::Config);
  }

  fs::path out_dir = opt.out.empty() ? fs::path("out") : fs::path(opt.out);
  try {
    PipelineConfig cfg;
    try {
      cfg = resolve(opt);
    } catch (const ConfigError& e) {
      throw PipelineError(Stage::Config, "ConfigError", e.what());
    }
    out_dir = cfg.outputs.directory;

    const auto start = std::chrono::steady_clock::now();
    StageOutput written;
    if (*solve) written = write_solve(cfg);
    else if (*analyze) written = write_analysis(cfg, field_path(opt, cfg));
    else if (*classify) written = write_classification(cfg, field_path(opt, cfg));
    else if (*table1) written = write_table1(cfg);
    else written = write_all(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!opt.quiet) {
      for (const auto& f : written.files) std::cout << (cfg.outputs.directory / f).string() << '\n';
      std::cerr << "done in " << format_real(secs) << " s\n";
    }
    return 0;
  } catch (const PipelineError& e) {
    write_error_record(out_dir, e);
    std::cerr << dump_json(e.record()) << '\n';
    return e.exit_code();
  }
}
