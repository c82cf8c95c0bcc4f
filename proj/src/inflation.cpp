#include "bbm/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "bbm/duhamel.hpp"
#include "bbm/errors.hpp"
#include "bbm/operators.hpp"

namespace bbm {

namespace {

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log2(xs[i]);
    ly[i] = std::log2(ys[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  SlopeFit fit;
  fit.slope = num / den;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double pair_slope = (ly[i + 1] - ly[i]) / (lx[i + 1] - lx[i]);
    fit.halfwidth = std::max(fit.halfwidth, std::abs(pair_slope - fit.slope));
  }
  return fit;
}

}  // namespace

BootstrapExponents bootstrap_exponents(const ExperimentParams& p) {
  BootstrapExponents e;
  e.a_cubic = p.gamma * (4.0 - 3.0 * p.mu);
  e.a_quad = p.gamma * (3.0 - 2.0 * p.mu);
  e.b_quad = 2.0 * p.gamma * (1.0 - p.mu);
  e.b_linear = p.gamma * (1.0 - p.mu);
  e.growth = p.gamma * (2.0 - p.mu);
  e.data = p.gamma - p.s;
  return e;
}

ValidatedParams validate_params(const ExperimentParams& p) {
  if (!(p.s > 0.0)) throw ConfigError("s must be positive, got " + std::to_string(p.s));
  if (p.k1 < 1) throw ConfigError("k1 must be a positive integer");
  if (!(p.gamma > 0.0) || !(p.gamma < p.s)) {
    throw GammaOutOfRange("gamma = " + std::to_string(p.gamma) +
                          " outside the admissible range (0, s) with s = " + std::to_string(p.s));
  }
  if (!(p.mu > 1.5)) {
    throw MuTooSmall("mu = " + std::to_string(p.mu) + " must exceed 3/2");
  }
  if (p.dt < 0.0) throw ConfigError("dt must be nonnegative");
  if (p.horizon < 0.0) throw ConfigError("T must be nonnegative");
  if (p.output_points < 1) throw ConfigError("output_points must be >= 1");

  ValidatedParams out;
  out.params = p;
  if (out.params.horizon == 0.0) out.params.horizon = p.default_horizon();
  out.exponents = bootstrap_exponents(p);
  if (p.mu >= 2.0) {
    out.warnings.push_back(
        "mu >= 2: the first-order norm at T0 = k1^(-mu*gamma) scales as k1^(gamma(2-mu)) "
        "and no longer grows with k1");
  }
  return out;
}

SpectralField build_initial_data(std::size_t k1, double gamma) {
  SpectralField u0(k1 + 1);
  const double amp = std::pow(static_cast<double>(k1), gamma);
  u0.sin_at(k1) = amp;
  u0.sin_at(k1 + 1) = amp;
  return u0;
}

BootstrapConstants bootstrap_constants(const ExperimentParams& p, double c_bil) {
  const double T = p.effective_horizon();
  const double k = static_cast<double>(p.k1);
  BootstrapConstants c;
  c.A = c_bil * (T * T * T * std::pow(k, 4.0 * p.gamma) + T * T * std::pow(k, 3.0 * p.gamma));
  c.B = c_bil * (T * T * std::pow(k, 2.0 * p.gamma) + T * std::pow(k, p.gamma));
  return c;
}

ExperimentRun run_experiment_full(const ExperimentParams& raw) {
  const ValidatedParams validated = validate_params(raw);
  const ExperimentParams& p = validated.params;

  ExperimentRun run;
  run.trajectory = integrate(p);
  run.snapshots = decompose(run.trajectory);

  InflationReport& report = run.report;
  report.params = run.trajectory.params;  // resolved cutoff recorded

  const NormTable& first = run.snapshots.front().norms;
  const NormTable& last = run.snapshots.back().norms;
  report.initial_norm_ms = first.u_ms;
  report.initial_norm_l2 = first.u_l2;
  report.final_norm_ms = last.u_ms;
  report.final_u1_norm_ms = last.u1_ms;
  report.inflation_ratio = last.u_ms / first.u_ms;

  double y_sup = 0.0;
  report.table.reserve(run.snapshots.size());
  for (const auto& snap : run.snapshots) {
    TableRow row;
    row.t = snap.t;
    row.norm_L2 = snap.norms.u_l2;
    row.norm_Hms = snap.norms.u_ms;
    row.norm_Su0 = snap.norms.su0_ms;
    row.norm_u1 = snap.norms.u1_ms;
    row.norm_y = snap.norms.y_ms;
    row.ratio_y_u1 = snap.norms.u1_l2 > 0.0 ? snap.norms.y_l2 / snap.norms.u1_l2 : 0.0;
    report.table.push_back(row);
    y_sup = std::max(y_sup, snap.norms.y_l2);
  }

  const double c_bil = default_bilinear_constant();
  const BootstrapConstants consts = bootstrap_constants(p, c_bil);
  BootstrapReport bootstrap;
  bootstrap.A = consts.A;
  bootstrap.B = consts.B;
  bootstrap.T = p.effective_horizon();
  if (consts.B < 1.0) {
    try {
      const BootstrapReport roots = bootstrap_roots(consts.A, consts.B, bootstrap.T);
      bootstrap.z_low = roots.z_low;
      bootstrap.z_high = roots.z_high;
    } catch (const NoRealRoots&) {
      // roots stay absent; the verdict below records the violation
    }
  }
  bootstrap.y_measured = y_sup;
  bootstrap.ok = bootstrap.z_low.has_value() &&
                 y_sup <= std::min(*bootstrap.z_low, 4.0 * bootstrap.A);
  report.bootstrap = bootstrap;
  report.bootstrap_violated = !bootstrap.ok;
  return run;
}

InflationReport run_experiment(const ExperimentParams& p) {
  return run_experiment_full(p).report;
}

SweepResult sweep_experiment(std::span<const std::size_t> k1_list,
                             const ExperimentParams& base, int jobs) {
  SweepResult result;
  result.runs.resize(k1_list.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1)) if (jobs > 1)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(k1_list.size()); ++i) {
    ExperimentParams p = base;
    p.k1 = k1_list[static_cast<std::size_t>(i)];
    result.runs[static_cast<std::size_t>(i)] = run_experiment(p);
  }

  result.slopes = fit_sweep_slopes(result.runs);
  for (auto& run : result.runs) run.slopes = result.slopes;
  return result;
}

SlopeSet fit_sweep_slopes(std::span<const InflationReport> runs) {
  SlopeSet slopes;
  if (runs.size() < 2) return slopes;
  std::vector<double> ks, u1n, u0n, ratio;
  for (const auto& run : runs) {
    ks.push_back(static_cast<double>(run.params.k1));
    u1n.push_back(run.final_u1_norm_ms);
    u0n.push_back(run.initial_norm_ms);
    ratio.push_back(run.inflation_ratio);
  }
  slopes.u1_slope = fit_loglog(ks, u1n);
  slopes.u0_slope = fit_loglog(ks, u0n);
  slopes.inflation_slope = fit_loglog(ks, ratio);
  return slopes;
}

std::vector<SequencePoint> inflation_sequence(double s, std::span<const double> targets,
                                              SequenceOptions options) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(targets[i] > 0.0) || (i > 0 && !(targets[i] > targets[i - 1]))) {
      throw ConfigError("targets must be positive and strictly increasing");
    }
  }
  if (!(options.gamma > 0.0) || !(options.gamma < s)) {
    throw GammaOutOfRange("sequence gamma = " + std::to_string(options.gamma) +
                          " outside (0, s) with s = " + std::to_string(s));
  }

  std::vector<SequencePoint> points;
  std::size_t k1 = options.k1_start;
  for (double target : targets) {
    for (;; k1 *= 2) {
      if (k1 > options.k1_cap) {
        throw TargetUnreachable(options.k1_cap,
                                "target " + std::to_string(target) +
                                    " not reached within the wavenumber cap " +
                                    std::to_string(options.k1_cap));
      }
      ExperimentParams p;
      p.s = s;
      p.gamma = options.gamma;
      p.mu = options.mu;
      p.k1 = k1;
      const InflationReport report = run_experiment(p);
      if (report.final_norm_ms >= target) {
        points.push_back({k1, report.params.horizon > 0.0
                                  ? report.params.horizon
                                  : report.params.default_horizon(),
                          report.final_norm_ms});
        k1 *= 2;  // keep the sequence strictly increasing
        break;
      }
    }
  }
  return points;
}

}  // namespace bbm
