#include "bbm/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bbm/errors.hpp"
#include "bbm/estimates.hpp"
#include "bbm/inflation.hpp"
#include "bbm/report.hpp"
#include "bbm/solver.hpp"

namespace bbm::cli {

namespace fs = std::filesystem;

namespace {

struct ParamFlags {
  // count of times each parameter flag was given, to arbitrate against the
  // config file (flags > file > defaults)
  int s = 0, gamma = 0, mu = 0, k1 = 0, n_modes = 0, dt = 0, horizon = 0, output_points = 0;
};

void add_param_options(CLI::App* cmd, ExperimentParams* p, ParamFlags* seen,
                       std::string* config_path) {
  cmd->add_option("--s", p->s, "norm index s (> 0); data lives in H^(-s)")
      ->each([seen](const std::string&) { ++seen->s; });
  cmd->add_option("--gamma", p->gamma, "amplitude exponent in (0, s)")
      ->each([seen](const std::string&) { ++seen->gamma; });
  cmd->add_option("--mu", p->mu, "time exponent (> 3/2); T0 = k1^(-mu*gamma)")
      ->each([seen](const std::string&) { ++seen->mu; });
  cmd->add_option("--k1", p->k1, "primary wavenumber")
      ->each([seen](const std::string&) { ++seen->k1; });
  cmd->add_option("--N", p->n_modes, "spectral cutoff (0 = automatic rule)")
      ->each([seen](const std::string&) { ++seen->n_modes; });
  cmd->add_option("--dt", p->dt, "time step (0 = automatic rule)")
      ->each([seen](const std::string&) { ++seen->dt; });
  cmd->add_option("--T", p->horizon, "final time (0 = T0 = k1^(-mu*gamma))")
      ->each([seen](const std::string&) { ++seen->horizon; });
  cmd->add_option("--output-points", p->output_points, "uniform output samples on [0, T]")
      ->each([seen](const std::string&) { ++seen->output_points; });
  cmd->add_option("--config", *config_path, "JSON file with ExperimentParams keys");
}

void apply_config_file(const std::string& path, ExperimentParams& p, const ParamFlags& seen) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (key == "s") {
      if (!seen.s) p.s = value.get<double>();
    } else if (key == "gamma") {
      if (!seen.gamma) p.gamma = value.get<double>();
    } else if (key == "mu") {
      if (!seen.mu) p.mu = value.get<double>();
    } else if (key == "k1") {
      if (!seen.k1) p.k1 = value.get<std::size_t>();
    } else if (key == "N") {
      if (!seen.n_modes) p.n_modes = value.get<std::size_t>();
    } else if (key == "dt") {
      if (!seen.dt) p.dt = value.get<double>();
    } else if (key == "T") {
      if (!seen.horizon) p.horizon = value.get<double>();
    } else if (key == "output_points") {
      if (!seen.output_points) p.output_points = value.get<std::size_t>();
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
}

int default_jobs() {
  if (const char* env = std::getenv("BBM_INFLATE_JOBS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IoError", "cannot write " + path.string());
  out << body;
}

void write_series_dat(const fs::path& path, const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  std::ostringstream os;
  char line[80];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g %.17g\n", xs[i], ys[i]);
    os << line;
  }
  write_file(path, os.str());
}

void emit_run_outputs(const fs::path& dir, const ExperimentRun& run, bool plots,
                      bool dump_coefficients) {
  fs::create_directories(dir);
  write_file(dir / "report.json", report_json(run.report));

  std::ostringstream csv;
  write_trajectory_csv(csv, run.snapshots);
  write_file(dir / "trajectory.csv", csv.str());

  if (dump_coefficients) {
    std::ostringstream dump;
    write_coefficient_dump(dump, run.trajectory);
    write_file(dir / "coefficients.txt", dump.str());
  }

  if (plots) {
    const fs::path pdir = dir / "plots";
    fs::create_directories(pdir);
    std::vector<double> t, u, su0, u1, y;
    for (const auto& row : run.report.table) {
      t.push_back(row.t);
      u.push_back(row.norm_Hms);
      su0.push_back(row.norm_Su0);
      u1.push_back(row.norm_u1);
      y.push_back(row.norm_y);
    }
    write_series_dat(pdir / "norm_u_vs_t.dat", t, u);
    write_series_dat(pdir / "norm_su0_vs_t.dat", t, su0);
    write_series_dat(pdir / "norm_u1_vs_t.dat", t, u1);
    write_series_dat(pdir / "norm_y_vs_t.dat", t, y);
  }
}

void print_validation(const ExperimentParams& params) {
  const ValidatedParams v = validate_params(params);
  const BootstrapExponents& e = v.exponents;
  std::printf("exponents: A-terms %+.4g, %+.4g; B-terms %+.4g, %+.4g; "
              "u1 growth %+.4g; data %+.4g\n",
              e.a_cubic, e.a_quad, e.b_quad, e.b_linear, e.growth, e.data);
  for (const auto& warning : v.warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }
}

void print_headline(const InflationReport& report) {
  std::printf("k1 = %zu  T = %.6g  ||u0||_{-s} = %.6g  ||u(T)||_{-s} = %.6g\n",
              report.params.k1, report.params.horizon, report.initial_norm_ms,
              report.final_norm_ms);
  std::printf("inflation ratio = %.6g\n", report.inflation_ratio);
  const auto& b = report.bootstrap;
  if (b.z_low) {
    std::printf("bootstrap: Y = %.6g, z_low = %.6g, 4A = %.6g -> %s\n", b.y_measured, *b.z_low,
                4.0 * b.A, b.ok ? "ok" : "violated");
  } else {
    std::printf("bootstrap: Y = %.6g, no real roots (A = %.6g, B = %.6g) -> violated\n",
                b.y_measured, b.A, b.B);
  }
}

int run_simulate(const RunConfig& config) {
  print_validation(config.params);
  const ExperimentRun run = run_experiment_full(config.params);
  emit_run_outputs(config.output_dir, run, config.emit_plots, config.dump_coefficients);
  print_headline(run.report);
  return 0;
}

int run_inflate(const RunConfig& config) {
  print_validation(config.params);
  const ExperimentRun run = run_experiment_full(config.params);
  emit_run_outputs(config.output_dir, run, config.emit_plots, config.dump_coefficients);
  print_headline(run.report);
  return 0;
}

int run_sweep(const RunConfig& config) {
  if (config.k1_list.empty()) throw ConfigError("sweep requires --k1-list");
  const fs::path root = config.output_dir;
  fs::create_directories(root);

  // reports are cheap to rebuild with full trajectories per point; fan out
  // the runs, then write per-point outputs serially
  std::vector<ExperimentRun> runs(config.k1_list.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(config.jobs, 1)) \
    if (config.jobs > 1)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(config.k1_list.size()); ++i) {
    ExperimentParams p = config.params;
    p.k1 = config.k1_list[static_cast<std::size_t>(i)];
    runs[static_cast<std::size_t>(i)] = run_experiment_full(p);
  }

  SweepResult sweep;
  for (auto& run : runs) sweep.runs.push_back(run.report);
  sweep.slopes = fit_sweep_slopes(sweep.runs);
  for (auto& report : sweep.runs) report.slopes = sweep.slopes;
  for (std::size_t i = 0; i < runs.size(); ++i) runs[i].report.slopes = sweep.slopes;

  for (std::size_t i = 0; i < runs.size(); ++i) {
    const fs::path sub = root / ("k1_" + std::to_string(config.k1_list[i]));
    emit_run_outputs(sub, runs[i], config.emit_plots, config.dump_coefficients);
    print_headline(runs[i].report);
  }
  write_file(root / "slopes.json", slopes_json(sweep));

  if (config.emit_plots) {
    std::vector<double> ks, u1n, u0n, ratio;
    for (const auto& r : sweep.runs) {
      ks.push_back(static_cast<double>(r.params.k1));
      u1n.push_back(r.final_u1_norm_ms);
      u0n.push_back(r.initial_norm_ms);
      ratio.push_back(r.inflation_ratio);
    }
    write_series_dat(root / "norm_u1_vs_k1.dat", ks, u1n);
    write_series_dat(root / "norm_u0_vs_k1.dat", ks, u0n);
    write_series_dat(root / "inflation_ratio_vs_k1.dat", ks, ratio);
  }
  return 0;
}

int run_sequence(const RunConfig& config) {
  SequenceOptions options;
  options.gamma = config.params.gamma;
  options.mu = config.params.mu;
  options.k1_start = config.params.k1;
  options.k1_cap = config.k1_cap;
  const auto points = inflation_sequence(config.params.s, config.targets, options);
  fs::create_directories(config.output_dir);
  write_file(fs::path(config.output_dir) / "sequence.json", sequence_json(points));
  for (const auto& pt : points) {
    std::printf("k1 = %zu  T = %.6g  achieved ||u(T)||_{-s} = %.6g\n", pt.k1, pt.T,
                pt.achieved_norm);
  }
  return 0;
}

int run_verify_bilinear(const RunConfig& config) {
  const std::size_t cutoff = config.params.n_modes > 0 ? config.params.n_modes : 256;
  const ProbeResult probe = bilinear_probe(config.q, config.trials, config.seed, cutoff);
  fs::create_directories(config.output_dir);
  std::ostringstream csv;
  write_probe_csv(csv, probe);
  write_file(fs::path(config.output_dir) / "bilinear.csv", csv.str());
  std::printf("max_ratio = %.17g  (q = %g, trials = %zu, N = %zu, seed = %llu)\n",
              probe.max_ratio, config.q, config.trials, cutoff,
              static_cast<unsigned long long>(config.seed));
  return 0;
}

int run_oracle_check(const RunConfig& config) {
  (void)config;
  ExperimentParams p;
  p.s = 1.0;
  p.gamma = 0.5;
  p.mu = 1.8;
  p.k1 = 2;
  p.n_modes = 32;
  p.horizon = 1.0;
  p.output_points = 200;

  const Trajectory fast = integrate(p);
  const Trajectory oracle = galerkin_oracle(p, 32);

  double sup = 0.0;
  for (std::size_t i = 0; i < fast.times.size(); ++i) {
    sup = std::max(sup, l2_distance(fast.states[i], oracle.states[i]));
  }

  auto drift = [](const Trajectory& traj) {
    const Conserved first = conserved_quantities(traj.states.front());
    double worst = 0.0;
    for (const auto& state : traj.states) {
      const Conserved q = conserved_quantities(state);
      const double mass_scale = std::max(std::abs(first.mass), 1.0);
      const double energy_scale = std::max(std::abs(first.energy), 1.0);
      worst = std::max(worst, std::abs(q.mass - first.mass) / mass_scale);
      worst = std::max(worst, std::abs(q.energy - first.energy) / energy_scale);
    }
    return worst;
  };

  const double drift_fast = drift(fast);
  const double drift_oracle = drift(oracle);
  const bool ok = sup <= 1e-8 && drift_fast <= 1e-8 && drift_oracle <= 1e-8;
  std::printf("oracle-check: sup L2 distance = %.3e, drift(fast) = %.3e, drift(oracle) = %.3e "
              "-> %s\n",
              sup, drift_fast, drift_oracle, ok ? "ok" : "FAILED");
  return ok ? 0 : 3;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file) {
  RunConfig config;
  config.jobs = default_jobs();

  CLI::App app{"norm-inflation laboratory for the periodic BBM equation"};
  app.require_subcommand(1);

  ParamFlags seen;
  std::string config_path;
  std::string k1_list_arg, targets_arg;

  auto add_output_options = [&](CLI::App* cmd) {
    cmd->add_option("--output-dir", config.output_dir, "directory for all written files");
    cmd->add_flag("--emit-plots", config.emit_plots, "write two-column .dat series");
    cmd->add_option("--seed", config.seed, "seed for randomized probes");
    cmd->add_option("--jobs", config.jobs, "max concurrent runs (env BBM_INFLATE_JOBS)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "integrate and tabulate one trajectory");
  add_param_options(simulate, &config.params, &seen, &config_path);
  add_output_options(simulate);
  simulate->add_flag("--dump-coefficients", config.dump_coefficients,
                     "write the full coefficient dump");

  CLI::App* inflate = app.add_subcommand("inflate", "run the full norm-inflation experiment");
  add_param_options(inflate, &config.params, &seen, &config_path);
  add_output_options(inflate);
  inflate->add_flag("--dump-coefficients", config.dump_coefficients);

  CLI::App* sweep = app.add_subcommand("sweep", "experiments across a k1 list plus slope fits");
  add_param_options(sweep, &config.params, &seen, &config_path);
  add_output_options(sweep);
  sweep->add_option("--k1-list", k1_list_arg, "comma-separated k1 values")->required();

  CLI::App* sequence = app.add_subcommand("sequence", "doubling search meeting rising norm targets");
  add_param_options(sequence, &config.params, &seen, &config_path);
  add_output_options(sequence);
  sequence->add_option("--targets", targets_arg, "comma-separated increasing norms")->required();
  sequence->add_option("--k1-cap", config.k1_cap, "wavenumber cap for the search");

  CLI::App* verify = app.add_subcommand("verify-bilinear", "empirical bilinear-estimate probe");
  add_param_options(verify, &config.params, &seen, &config_path);
  add_output_options(verify);
  verify->add_option("--q", config.q, "Sobolev index of the probe (>= 0)");
  verify->add_option("--trials", config.trials, "number of random draws");

  CLI::App* oracle = app.add_subcommand("oracle-check", "cross-validate solver vs oracle");
  add_output_options(oracle);

  std::vector<const char*> argv;
  argv.push_back("bbm_inflate");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    help << app.help();
    throw Error("Help", help.str());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (config.q < 0.0) throw ConfigError("q must be >= 0");

  if (simulate->parsed()) config.command = Command::simulate;
  if (inflate->parsed()) config.command = Command::inflate;
  if (sweep->parsed()) config.command = Command::sweep;
  if (sequence->parsed()) config.command = Command::sequence;
  if (verify->parsed()) config.command = Command::verify_bilinear;
  if (oracle->parsed()) config.command = Command::oracle_check;

  const std::string file = !config_path.empty() ? config_path : config_file.value_or("");
  if (!file.empty()) apply_config_file(file, config.params, seen);

  auto parse_list = [](const std::string& text, auto push) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) push(item);
    }
  };
  if (!k1_list_arg.empty()) {
    parse_list(k1_list_arg, [&](const std::string& item) {
      config.k1_list.push_back(static_cast<std::size_t>(std::stoull(item)));
    });
  }
  if (!targets_arg.empty()) {
    parse_list(targets_arg,
               [&](const std::string& item) { config.targets.push_back(std::stod(item)); });
  }

  return config;
}

int dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::simulate: return run_simulate(config);
    case Command::inflate: return run_inflate(config);
    case Command::sweep: return run_sweep(config);
    case Command::sequence: return run_sequence(config);
    case Command::verify_bilinear: return run_verify_bilinear(config);
    case Command::oracle_check: return run_oracle_check(config);
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const Error& e) {
    if (e.name() == "Help") {
      std::printf("%s\n", e.what());
      return 0;
    }
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "InvalidConfig: %s\n", e.what());
    return 2;
  }

  try {
    return dispatch(config);
  } catch (const GammaOutOfRange& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 2;
  } catch (const MuTooSmall& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "RuntimeError: %s\n", e.what());
    return 3;
  }
}

}  // namespace bbm::cli
