#pragma once

#include <array>
#include <cstddef>

#include "bbm/params.hpp"
#include "bbm/spectral_field.hpp"

namespace bbm {

enum class PhaseKind { sine, cosine };

// One forcing mode amplitude * sin(kx - omega*tau) (or cos), the integrand
// family of the first-order correction.
struct OscillatoryMode {
  std::size_t wavenumber = 1;  // k >= 1
  double omega = 0.0;          // temporal frequency
  PhaseKind phase = PhaseKind::sine;
  double amplitude = 1.0;
};

// |kappa_k - omega| at or below this uses the exact resonant limit
// t * (integrand at frequency kappa_k) instead of the difference quotient.
inline constexpr double kResonanceTol = 1e-9;

// int_0^t S(t - tau) * mode(tau) dtau, evaluated in closed form as a two-term
// field on wavenumber k. For the sine phase:
//   (kappa_k - omega)^{-1} [ cos(kx - kappa_k t) - cos(kx - omega t) ],
// the cosine phase is the analogous antiderivative, and the resonant branch
// returns t * (integrand with frequency kappa_k).
SpectralField oscillatory_integral(const OscillatoryMode& mode, double t);

// The four product modes of (S(tau) u0)^2 for the two-mode data
// u0 = k1^gamma (sin(k1 x) + sin(k2 x)): wavenumbers 2*k1, 2*k2, k2 - k1 = 1
// and k1 + k2, with their forcing frequencies. Returned with the k1^{2 gamma}
// scaling applied, ordered {2k1, 2k2, difference, sum}.
std::array<OscillatoryMode, 4> first_order_modes(const ExperimentParams& p);

// Closed form of the first-order correction u1(., t): the sum of the four
// oscillatory integrals. Mean-zero, spectral support in
// {1, 2*k1, 2*k1+1, 2*k1+2}.
SpectralField first_order_term(const ExperimentParams& p, double t);

// The four summands of u1 separately, same order as first_order_modes().
std::array<SpectralField, 4> first_order_term_parts(const ExperimentParams& p, double t);

// H^(-s) norm of the difference-mode (wavenumber 1) summand alone: the
// predictor behind the k1^{2 gamma} t growth law. The other three summands
// decay relative to it as k1 grows.
double leading_norm_prediction(const ExperimentParams& p, double t);

}  // namespace bbm
