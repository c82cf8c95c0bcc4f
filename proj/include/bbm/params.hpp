#pragma once

#include <cstddef>

namespace bbm {

// Parameters of one norm-inflation run. Zero in n_modes, dt or horizon
// requests the built-in rule for that knob; validate_params() fills the
// horizon default T0 = k1^(-mu*gamma).
struct ExperimentParams {
  double s = 1.0;       // data and blow-up norms live in H^(-s), s > 0
  double gamma = 0.8;   // amplitude exponent, restricted to (0, s)
  double mu = 1.8;      // time exponent, mu > 3/2
  std::size_t k1 = 64;  // primary wavenumber; the partner mode is k2 = k1 + 1
  std::size_t n_modes = 0;        // spectral cutoff N (0 = cutoff rule)
  double dt = 0.0;                // step size (0 = step rule)
  double horizon = 0.0;           // final time T (0 = T0)
  std::size_t output_points = 200;  // uniform output samples on [0, T]

  std::size_t k2() const { return k1 + 1; }
  double default_horizon() const;                 // k1^(-mu*gamma)
  double effective_horizon() const;               // horizon or the default
  std::size_t default_cutoff() const;             // max(4*(2*k1+2), 256)
  double default_dt(double T) const;              // min(T/200, 0.01/(1+k1^gamma))
};

}  // namespace bbm
