// coherence-lab: reproduces the two-qubit examples, runs Monte-Carlo bound
// verification, |alpha|^2 sweeps and saturation searches.
//
// Exit codes: 0 success / no violations, 1 violations found, 2 usage or
// configuration error.

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "coherence/commands.hpp"

namespace {

using namespace coherence;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::string config;
  std::vector<std::pair<std::string, std::string>> values;  // key, value in flag order
  std::string format;
  bool reproducible = false;
};

/// Registers a string flag that becomes the config key `key` when given.
void add_override(CLI::App* cmd, Overrides& ov, const std::string& flag, const std::string& key,
                  const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.values.emplace_back(key, v); }, help);
}

LabConfig resolve(const Overrides& ov) {
  LabConfig cfg;
  if (!ov.config.empty()) load_config_file(cfg, ov.config);
  for (const auto& [key, value] : ov.values) apply_setting(cfg, key, value, "--" + key);
  if (ov.reproducible) cfg.reproducible = true;
  return cfg;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot open output file");
  out << payload;
}

int demo(const Overrides& ov) {
  const auto cfg = resolve(ov);
  const auto rep = run_demo(cfg.tolerance, cfg.reproducible);
  const std::string fmt = ov.format.empty() ? "text" : ov.format;
  if (fmt == "json") {
    write_output(cfg.out, canonical_dump(rep.to_json()));
  } else if (fmt == "text") {
    write_output(cfg.out, render_demo_text(rep));
  } else {
    throw ConfigError("--format: demo supports text or json");
  }
  return rep.violations ? kExitViolations : kExitOk;
}

int verify(const Overrides& ov) {
  const auto cfg = resolve(ov);
  const auto rep = run_verify(cfg);
  const std::string fmt = ov.format.empty() ? "json" : ov.format;
  if (fmt == "json") {
    write_output(cfg.out, canonical_dump(rep.to_json()));
  } else if (fmt == "csv") {
    write_output(cfg.out, render_verify_csv(rep));
  } else {
    throw ConfigError("--format: verify supports json or csv");
  }
  std::cerr << "verify: " << rep.results.size() << " ensembles, " << rep.violations << " violations\n";
  return rep.violations ? kExitViolations : kExitOk;
}

int sweep(const Overrides& ov) {
  const auto cfg = resolve(ov);
  if (!cfg.bound) throw ConfigError("sweep: --bound is required");
  const std::size_t dim = cfg.dims.size() == 1 ? cfg.dims.front() : 2;
  const auto grid = cfg.grid.empty() ? *parse_grid("0.1:0.9:0.1") : cfg.grid;
  const auto seed = effective_seed(cfg);
  const auto rows = run_sweep(*cfg.bound, dim, grid, seed, cfg.tolerance);
  const auto rep = sweep_report(*cfg.bound, dim, seed, cfg.tolerance, rows, cfg.reproducible);
  const std::string fmt = ov.format.empty() ? "csv" : ov.format;
  if (fmt == "csv") {
    write_output(cfg.out, render_sweep_csv(rows));
  } else if (fmt == "json") {
    write_output(cfg.out, canonical_dump(rep.to_json()));
  } else {
    throw ConfigError("--format: sweep supports csv or json");
  }
  return rep.violations ? kExitViolations : kExitOk;
}

int saturate(const Overrides& ov) {
  const auto cfg = resolve(ov);
  if (!cfg.bound) throw ConfigError("saturate: --bound is required");
  SearchSpec spec;
  spec.bound_id = *cfg.bound;
  spec.dim = cfg.dims.size() == 1 ? cfg.dims.front() : 2;
  spec.pair_kind = cfg.pair_kind.value_or(default_pair_kind(spec.bound_id));
  spec.restarts = cfg.restarts;
  spec.iterations = cfg.iterations;
  spec.seed = effective_seed(cfg);
  spec.tolerance = cfg.tolerance;
  if (!compatible(spec.bound_id, spec.pair_kind))
    throw ConfigError("saturate: bound " + std::string(to_string(spec.bound_id)) + " is incompatible with pair kind " +
                      std::string(to_string(spec.pair_kind)));

  const auto started = utc_timestamp(cfg.reproducible);
  const auto res = minimize_slack(spec, cfg.workers);
  const auto rep = saturate_report(spec, res, cfg.reproducible, started);
  const std::string fmt = ov.format.empty() ? "text" : ov.format;
  if (fmt == "json") {
    write_output(cfg.out, canonical_dump(rep.to_json()));
  } else if (fmt == "text") {
    write_output(cfg.out, render_saturate_text(spec, res));
  } else {
    throw ConfigError("--format: saturate supports text or json");
  }
  if (res.violation()) std::cerr << "saturate: search found a violated bound\n";
  return rep.violations ? kExitViolations : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative entropy of coherence for two-term superpositions: examples, bound verification, "
               "sweeps and saturation search"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Overrides ov;
  auto add_common = [&ov](CLI::App* cmd) {
    cmd->add_option("--config", ov.config, "key = value configuration file")->check(CLI::ExistingFile);
    add_override(cmd, ov, "--seed", "seed", "master seed (default: $COHERENCE_LAB_SEED)");
    add_override(cmd, ov, "--tolerance", "tolerance", "bound verdict tolerance");
    add_override(cmd, ov, "--out", "out", "output file (default: standard output)");
    add_override(cmd, ov, "--workers", "workers", "worker threads (0 = all cores)");
    cmd->add_option("--format", ov.format, "output format");
    cmd->add_flag("--reproducible", ov.reproducible, "pin report timestamps to SOURCE_DATE_EPOCH");
  };

  auto* demo_cmd = app.add_subcommand("demo", "evaluate the two introductory two-qubit examples");
  add_common(demo_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo verification of every bound");
  add_common(verify_cmd);
  add_override(verify_cmd, ov, "--dim", "dims", "dimension(s), comma separated");
  add_override(verify_cmd, ov, "--trials", "trials", "trials per (pair kind, dimension)");
  add_override(verify_cmd, ov, "--pair-kinds", "pair_kinds", "disjoint,orthogonal,nonorthogonal,arbitrary");

  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate one bound over a grid of |alpha|^2 values");
  add_common(sweep_cmd);
  add_override(sweep_cmd, ov, "--bound", "bound", "bound id, e.g. T1_EQUALITY");
  add_override(sweep_cmd, ov, "--dim", "dims", "dimension");
  add_override(sweep_cmd, ov, "--grid", "grid", "start:stop:step or comma-separated |alpha|^2 values");

  auto* sat_cmd = app.add_subcommand("saturate", "Nelder-Mead search for the smallest slack of a bound");
  add_common(sat_cmd);
  add_override(sat_cmd, ov, "--bound", "bound", "bound id, e.g. GAIN_LE_1");
  add_override(sat_cmd, ov, "--dim", "dims", "dimension");
  add_override(sat_cmd, ov, "--pair-kind", "pair_kind", "pair kind searched over");
  add_override(sat_cmd, ov, "--restarts", "restarts", "independent restarts");
  add_override(sat_cmd, ov, "--iterations", "iterations", "simplex iterations per restart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (demo_cmd->parsed()) return demo(ov);
    if (verify_cmd->parsed()) return verify(ov);
    if (sweep_cmd->parsed()) return sweep(ov);
    if (sat_cmd->parsed()) return saturate(ov);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CoherenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
