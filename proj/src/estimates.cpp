#include "bbm/estimates.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>

#include "bbm/errors.hpp"
#include "bbm/operators.hpp"
#include "bbm/spectral_field.hpp"

namespace bbm {

namespace {

// Small self-contained generator so that probe draws are identical across
// platforms and thread counts: splitmix64 stream + Box-Muller.
struct NormalDraws {
  explicit NormalDraws(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() {  // (0, 1)
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double u = uniform(), v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare = radius * std::sin(angle);
    have_spare = true;
    return radius * std::cos(angle);
  }

  std::uint64_t state;
  double spare = 0.0;
  bool have_spare = false;
};

std::uint64_t mode_seed(std::uint64_t seed, std::size_t trial, std::size_t attempt,
                        std::size_t role, std::size_t k) {
  return seed ^ (0x9e3779b97f4a7c15ull * (trial + 1)) ^ (0xc2b2ae3d27d4eb4full * attempt) ^
         (0xd6e8feb86659fd93ull * (2 * k + role));
}

// One generator per (trial, factor, mode): enlarging the cutoff extends a
// draw instead of reshuffling it, so the empirical constant can be compared
// across cutoffs.
SpectralField random_polynomial(std::uint64_t seed, std::size_t trial, std::size_t attempt,
                                std::size_t role, double q, std::size_t cutoff) {
  SpectralField f(cutoff);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    NormalDraws rng(mode_seed(seed, trial, attempt, role, k));
    const double scale = std::pow(static_cast<double>(k), -q - 1.0);
    f.sin_at(k) = scale * rng.normal();
    f.cos_at(k) = scale * rng.normal();
  }
  return f;
}

}  // namespace

ProbeResult bilinear_probe(double q, std::size_t trials, std::uint64_t seed,
                           std::size_t cutoff) {
  if (cutoff == 0) throw std::invalid_argument("bilinear_probe: cutoff must be >= 1");
  if (q < 0.0) throw std::invalid_argument("bilinear_probe: q must be >= 0");
  ProbeResult result;
  result.samples.assign(trials, 0.0);
  const SobolevIndex index{q};

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t trial = 0; trial < static_cast<std::int64_t>(trials); ++trial) {
    double ratio = 0.0;
    for (std::size_t attempt = 0;; ++attempt) {
      const std::size_t trial_index = static_cast<std::size_t>(trial);
      const SpectralField u = random_polynomial(seed, trial_index, attempt, 0, q, cutoff);
      const SpectralField v = random_polynomial(seed, trial_index, attempt, 1, q, cutoff);
      const double nu = sobolev_norm(u, index);
      const double nv = sobolev_norm(v, index);
      if (nu == 0.0 || nv == 0.0) continue;  // reject degenerate draws
      ratio = sobolev_norm(apply_lambda(multiply(u, v)), index) / (nu * nv);
      break;
    }
    result.samples[static_cast<std::size_t>(trial)] = ratio;
  }

  for (double r : result.samples) result.max_ratio = std::max(result.max_ratio, r);
  return result;
}

double default_bilinear_constant() {
  static std::once_flag flag;
  static double value = 0.0;
  std::call_once(flag, [] { value = bilinear_probe(0.0, 1000, 42, 256).max_ratio; });
  return value;
}

BootstrapReport bootstrap_roots(double A, double B, double T) {
  if (!(A >= 0.0) || !(T > 0.0) || !(B < 1.0)) {
    throw std::invalid_argument("bootstrap_roots: requires A >= 0, T > 0, B < 1");
  }
  BootstrapReport report;
  report.A = A;
  report.B = B;
  report.T = T;

  const double one_minus_b = 1.0 - B;
  const double disc = one_minus_b * one_minus_b - 4.0 * A * T;
  if (disc < 0.0) {
    throw NoRealRoots("discriminant " + std::to_string(disc) +
                      " < 0: no bootstrap window at these A, B, T");
  }
  const double root = std::sqrt(disc);
  // rationalized small root avoids cancellation when A*T is tiny
  report.z_low = 2.0 * A / (one_minus_b + root);
  report.z_high = (one_minus_b + root) / (2.0 * T);
  return report;
}

void write_probe_csv(std::ostream& os, const ProbeResult& probe) {
  os << "trial,ratio\n";
  char line[64];
  for (std::size_t i = 0; i < probe.samples.size(); ++i) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", i, probe.samples[i]);
    os << line;
  }
}

}  // namespace bbm
