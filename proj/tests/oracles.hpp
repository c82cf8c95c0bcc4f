#pragma once

#include <functional>
#include <random>

#include "bbm/duhamel.hpp"
#include "bbm/params.hpp"
#include "bbm/spectral_field.hpp"

// Test-only oracles, deliberately independent of the closed forms they
// check: field-valued adaptive Simpson quadrature and the assembled Duhamel
// integrands.
namespace bbm::testing {

using FieldFunction = std::function<SpectralField(double)>;

// Adaptive Simpson with sup-norm (coefficientwise) error control.
SpectralField field_quadrature(const FieldFunction& f, double a, double b, double tol);

// amplitude * sin(kx - omega*tau) (or cos) as a field.
SpectralField mode_field(const OscillatoryMode& mode, double tau);

// int_0^t S(t - tau) mode(tau) dtau by quadrature of propagated mode fields.
SpectralField oscillatory_integral_quadrature(const OscillatoryMode& mode, double t, double tol);

// int_0^t S(t - tau) (1/2) Lambda (S(tau) u0)^2 dtau assembled from
// propagate, multiply and apply_lambda only.
SpectralField first_order_quadrature(const ExperimentParams& p, double t, double tol);

// Uniformly random field with coefficients in [-1, 1]; mean_zero controls
// the constant mode.
SpectralField random_field(std::mt19937& rng, std::size_t cutoff, bool mean_zero = true);

}  // namespace bbm::testing
