#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace bbm {

// Roots and verdict of the bootstrap polynomial p(z) = A + (B-1) z + T z^2.
struct BootstrapReport {
  double A = 0, B = 0, T = 0;
  std::optional<double> z_low;
  std::optional<double> z_high;
  double y_measured = 0;  // sup_{t<=T} ||y(t)||_0 on the output grid
  bool ok = false;        // y_measured <= min(z_low, 4A)
};

struct ProbeResult {
  double max_ratio = 0;
  std::vector<double> samples;  // one ratio per trial
};

// Empirical probe of || Lambda(u v) ||_q <= C ||u||_q ||v||_q over seeded
// random trigonometric polynomials with coefficients ~ N(0,1) * k^{-q-1}.
// Zero draws are rejected and resampled. Deterministic for a fixed
// (q, trials, seed, cutoff) regardless of thread count.
ProbeResult bilinear_probe(double q, std::size_t trials, std::uint64_t seed,
                           std::size_t cutoff);

// The probe instance whose maximum ratio feeds the bootstrap constants:
// q = 0, 1000 trials, seed 42, cutoff 256. Memoized per process.
double default_bilinear_constant();

// Roots of p(z) = A + (B-1) z + T z^2 via the cancellation-safe quadratic
// form (rationalized numerator for the small root). Requires A >= 0, T > 0,
// B < 1. Throws NoRealRoots when the discriminant is negative.
BootstrapReport bootstrap_roots(double A, double B, double T);

// CSV `trial,ratio`, 17 significant digits.
void write_probe_csv(std::ostream& os, const ProbeResult& probe);

}  // namespace bbm
