#include "kerrsync/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "kerrsync/config_io.hpp"

namespace kerrsync::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(fs::path(dir) / name);
  if (!out) throw ConfigError("cannot write " + (fs::path(dir) / name).string());
  return out;
}

json provenance(const RunConfig& rc) {
  const json effective = rc.to_json();
  return {{"config_hash", config_hash(effective)},
          {"seed", rc.seed},
          {"code_version", kVersion},
          {"config", effective}};
}

void print_banner(const RunConfig& rc, std::ostream& log) {
  if (!rc.preset.empty()) log << "preset " << rc.preset << ": " << kCalibrationBanner << '\n';
}

}  // namespace

int cmd_simulate(const RunOptions& opts, std::ostream& log) {
  RunConfig rc;
  try {
    rc = resolve_run_config(opts.config_path, opts.preset, opts.seed_override);
    if (!rc.preset.empty() && find_preset(rc.preset)->is_sweep())
      throw ConfigError("preset " + rc.preset + " is a sweep preset; use the sweep command");
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  print_banner(rc, log);

  const auto traj = integrate(rc.initial_mean,
                              initial_covariance(rc.initial_covariance, rc.seed),
                              rc.params, rc.integrator, false);
  try {
    auto csv = open_output(opts.out_dir, "trajectory.csv");
    write_trajectory_csv(csv, traj);

    json summary = provenance(rc);
    summary["converged"] = traj.status.ok();
    summary["status"] = traj.status.ok() ? "ok" : traj.status.message;
    summary["samples"] = traj.size();
    summary["window_fraction"] = rc.window_fraction;
    summary["sample_interval"] = rc.integrator.sample_interval;
    try {
      summary["steady"] = stats_to_json(summarize(traj, rc.window_fraction));
    } catch (const MeasureError& e) {
      summary["steady"] = nullptr;
      summary["steady_error"] = e.what();
    }
    open_output(opts.out_dir, "summary.json") << summary.dump(2) << '\n';
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (!traj.status.ok()) {
    log << "numerical failure: " << traj.status.message << '\n';
    return kNumericalFailure;
  }
  return kSuccess;
}

int cmd_sweep(const RunOptions& opts, std::ostream& log) {
  RunConfig rc;
  SweepGrid grid;
  try {
    rc = resolve_run_config(opts.config_path, opts.preset, opts.seed_override);
    grid = rc.sweep_grid();
    grid.validate();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  print_banner(rc, log);

  const auto start = std::chrono::steady_clock::now();
  const auto result = run_sweep(grid, opts.workers);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.converged ? 0 : 1;
  try {
    auto csv = open_output(opts.out_dir, "sweep.csv");
    write_sweep_csv(csv, result);
    json meta = provenance(rc);
    meta["grid"] = {{"columns", result.columns},
                    {"axes", axes_to_json(grid.axes)},
                    {"points", result.rows.size()},
                    {"seeds", grid.seeds}};
    meta["failed_points"] = failed;
    json failures = json::array();
    for (std::size_t i = 0; i < result.rows.size(); ++i)
      if (!result.rows[i].converged)
        failures.push_back({{"row", i}, {"message", result.rows[i].failure}});
    meta["failures"] = failures;
    if (!rc.preset.empty()) meta["calibration_note"] = kCalibrationBanner;
    open_output(opts.out_dir, "sweep_meta.json") << meta.dump(2) << '\n';
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  log << result.rows.size() << " points (" << failed << " failed) in " << seconds << " s with "
      << opts.workers << " worker(s)\n";
  return kSuccess;
}

int cmd_validate(const ValidationOptions& checks, const std::string& out_dir, std::ostream& log) {
  const auto results = run_validation_suite(checks);
  json report = {{"code_version", kVersion}, {"seed", checks.seed}, {"checks", json::array()}};
  bool all = true;
  for (const auto& r : results) {
    report["checks"].push_back({{"name", r.name},
                                {"passed", r.passed},
                                {"measured", r.measured},
                                {"threshold", r.threshold},
                                {"detail", r.detail}});
    log << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured << "  ("
        << r.detail << ")\n";
    all = all && r.passed;
  }
  report["all_passed"] = all;
  try {
    open_output(out_dir, "validation.json") << report.dump(2) << '\n';
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return all ? kSuccess : kNumericalFailure;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum synchronization of two coupled Kerr optomechanical cavities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  RunOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory");
  simulate->add_option("--config", sim.config_path, "JSON run configuration");
  simulate->add_option("--preset", sim.preset, "Figure preset (fig4, fig5, fig8, fig9)");
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();

  RunOptions sw;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", sw.config_path, "JSON run configuration");
  sweep->add_option("--preset", sw.preset, "Figure preset (fig2a ... fig7b)");
  sweep->add_option("--workers", sw.workers, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", sw.out_dir, "Output directory")->required();

  ValidationOptions checks;
  std::string validate_out = ".";
  auto* validate = app.add_subcommand("validate", "Run the oracle checks");
  validate->add_option("--out", validate_out, "Output directory");
  validate->add_option("--mc-paths", checks.mc_paths, "Monte Carlo paths");
  validate->add_option("--jacobian-states", checks.jacobian_states, "Random Jacobian states");
  validate->add_option("--workers", checks.workers, "Worker threads")->check(CLI::PositiveNumber);

  auto* presets = app.add_subcommand("presets", "List figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  std::optional<std::string> seed_env;
  if (const char* s = std::getenv("KERRSYNC_SEED")) seed_env = s;

  if (*simulate) {
    sim.seed_override = seed_env;
    return cmd_simulate(sim, err);
  }
  if (*sweep) {
    sw.seed_override = seed_env;
    return cmd_sweep(sw, err);
  }
  if (*validate) return cmd_validate(checks, validate_out, err);
  if (*presets) {
    for (const auto& name : preset_names()) out << name << "  " << find_preset(name)->description << '\n';
    return kSuccess;
  }
  return kConfigError;
}

}  // namespace kerrsync::cli
