#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bbm/estimates.hpp"
#include "bbm/params.hpp"
#include "bbm/solver.hpp"
#include "bbm/spectral_field.hpp"

namespace bbm {

// The six exponents that control the bootstrap at T = k1^(-mu*gamma); the
// construction needs all of them negative except `growth`, which drives the
// first-order norm k1^{gamma(2-mu)}.
struct BootstrapExponents {
  double a_cubic;   // gamma*(4 - 3 mu)
  double a_quad;    // gamma*(3 - 2 mu)
  double b_quad;    // 2 gamma*(1 - mu)
  double b_linear;  // gamma*(1 - mu)
  double growth;    // gamma*(2 - mu)
  double data;      // gamma - s
};

struct ValidatedParams {
  ExperimentParams params;  // horizon default filled in
  BootstrapExponents exponents;
  std::vector<std::string> warnings;
};

// Checks 0 < gamma < s, mu > 3/2 and the structural invariants; fills the
// default horizon. Throws GammaOutOfRange / MuTooSmall. mu >= 2 is legal but
// earns a warning: the first-order norm at T0 no longer grows with k1.
ValidatedParams validate_params(const ExperimentParams& p);

BootstrapExponents bootstrap_exponents(const ExperimentParams& p);

// Two-mode data k1^gamma ( sin(k1 x) + sin((k1+1) x) ), mean zero.
SpectralField build_initial_data(std::size_t k1, double gamma);

// A = C (T^3 k1^{4 gamma} + T^2 k1^{3 gamma}),
// B = C (T^2 k1^{2 gamma} + T k1^{gamma}), at T = effective horizon.
struct BootstrapConstants {
  double A = 0, B = 0;
};
BootstrapConstants bootstrap_constants(const ExperimentParams& p, double c_bil);

struct TableRow {
  double t = 0;
  double norm_L2 = 0;    // ||u||_0
  double norm_Hms = 0;   // ||u||_{-s}
  double norm_Su0 = 0;   // ||S(t)u0||_{-s}
  double norm_u1 = 0;    // ||u1||_{-s}
  double norm_y = 0;     // ||y||_{-s}
  double ratio_y_u1 = 0; // ||y||_0 / ||u1||_0  (0 when u1 = 0)
};

struct SlopeFit {
  double slope = 0;
  double halfwidth = 0;  // largest deviation of a consecutive-pair slope
};

struct SlopeSet {
  std::optional<SlopeFit> u1_slope;         // log2 ||u1(T0)||_{-s} vs log2 k1
  std::optional<SlopeFit> u0_slope;         // log2 ||u0||_{-s} vs log2 k1
  std::optional<SlopeFit> inflation_slope;  // log2 inflation ratio vs log2 k1
};

struct InflationReport {
  ExperimentParams params;
  double initial_norm_ms = 0;
  double initial_norm_l2 = 0;
  std::vector<TableRow> table;
  BootstrapReport bootstrap;
  double inflation_ratio = 0;  // ||u(T)||_{-s} / ||u0||_{-s}
  double final_norm_ms = 0;    // ||u(T)||_{-s}
  double final_u1_norm_ms = 0; // ||u1(T)||_{-s}
  bool bootstrap_violated = false;  // recorded, never thrown
  SlopeSet slopes;  // filled by sweeps, empty for a single run
};

// Full pipeline for one parameter point: validate, build data, integrate,
// decompose, bootstrap bookkeeping. Deterministic for fixed params.
InflationReport run_experiment(const ExperimentParams& p);

// Trajectory + snapshots alongside the report, for callers that also write
// the CSV table or dump coefficients.
struct ExperimentRun {
  InflationReport report;
  Trajectory trajectory;
  std::vector<DecompositionSnapshot> snapshots;
};
ExperimentRun run_experiment_full(const ExperimentParams& p);

// Independent runs per k1 (fanned out up to `jobs` at a time) plus log-log
// slope fits across the sweep.
struct SweepResult {
  std::vector<InflationReport> runs;
  SlopeSet slopes;
};
SweepResult sweep_experiment(std::span<const std::size_t> k1_list,
                             const ExperimentParams& base, int jobs = 1);

// Log-log least-squares fits of ||u1(T0)||_{-s}, ||u0||_{-s} and the
// inflation ratio against k1. Needs at least two runs.
SlopeSet fit_sweep_slopes(std::span<const InflationReport> runs);

struct SequencePoint {
  std::size_t k1 = 0;
  double T = 0;
  double achieved_norm = 0;
};

struct SequenceOptions {
  std::size_t k1_start = 64;
  std::size_t k1_cap = 4096;
  double gamma = 0.8;
  double mu = 1.8;
};

// Doubling search for wavenumbers whose measured ||u(T0)||_{-s} meets each
// target in turn; k1 strictly increases across targets, so the associated
// times T0 strictly decrease. Throws TargetUnreachable at the cap.
std::vector<SequencePoint> inflation_sequence(double s, std::span<const double> targets,
                                              SequenceOptions options = {});

}  // namespace bbm
