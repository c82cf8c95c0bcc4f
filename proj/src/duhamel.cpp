#include "bbm/duhamel.hpp"

#include <cmath>

#include "bbm/operators.hpp"

namespace bbm {

namespace {

// c * [cos(kx - th1) - cos(kx - th2)] written on the sin/cos basis.
void add_cos_difference(SpectralField& f, std::size_t k, double c, double th1, double th2) {
  f.sin_at(k) += c * (std::sin(th1) - std::sin(th2));
  f.cos_at(k) += c * (std::cos(th1) - std::cos(th2));
}

// c * [sin(kx - th1) - sin(kx - th2)].
void add_sin_difference(SpectralField& f, std::size_t k, double c, double th1, double th2) {
  f.sin_at(k) += c * (std::cos(th1) - std::cos(th2));
  f.cos_at(k) += c * (std::sin(th2) - std::sin(th1));
}

}  // namespace

SpectralField oscillatory_integral(const OscillatoryMode& mode, double t) {
  const std::size_t k = mode.wavenumber;
  const double kap = kappa(k);
  SpectralField out(k);
  if (t == 0.0 || mode.amplitude == 0.0) return out;

  const double gap = kap - mode.omega;
  if (std::abs(gap) <= kResonanceTol) {
    // integrand is constant in tau: t * (integrand at frequency kappa_k)
    const double th = kap * t;
    if (mode.phase == PhaseKind::sine) {
      out.sin_at(k) = mode.amplitude * t * std::cos(th);
      out.cos_at(k) = -mode.amplitude * t * std::sin(th);
    } else {
      out.sin_at(k) = mode.amplitude * t * std::sin(th);
      out.cos_at(k) = mode.amplitude * t * std::cos(th);
    }
    return out;
  }

  const double c = mode.amplitude / gap;
  if (mode.phase == PhaseKind::sine) {
    add_cos_difference(out, k, c, kap * t, mode.omega * t);
  } else {
    add_sin_difference(out, k, c, mode.omega * t, kap * t);
  }
  return out;
}

std::array<OscillatoryMode, 4> first_order_modes(const ExperimentParams& p) {
  const std::size_t k1 = p.k1, k2 = p.k2();
  const double scale = std::pow(static_cast<double>(k1), 2.0 * p.gamma);
  // (1/2) Lambda (S(tau) u0)^2 splits into four forced modes; the difference
  // mode k2 - k1 = 1 carries kappa(1) = 1/2 and dominates for large k1.
  return {
      OscillatoryMode{2 * k1, 2.0 * kappa(k1), PhaseKind::sine, -0.25 * kappa(2 * k1) * scale},
      OscillatoryMode{2 * k2, 2.0 * kappa(k2), PhaseKind::sine, -0.25 * kappa(2 * k2) * scale},
      OscillatoryMode{1, kappa(k2) - kappa(k1), PhaseKind::sine, 0.25 * scale},
      OscillatoryMode{k1 + k2, kappa(k1) + kappa(k2), PhaseKind::sine,
                      -0.5 * kappa(k1 + k2) * scale},
  };
}

std::array<SpectralField, 4> first_order_term_parts(const ExperimentParams& p, double t) {
  const auto modes = first_order_modes(p);
  return {oscillatory_integral(modes[0], t), oscillatory_integral(modes[1], t),
          oscillatory_integral(modes[2], t), oscillatory_integral(modes[3], t)};
}

SpectralField first_order_term(const ExperimentParams& p, double t) {
  SpectralField out(2 * p.k2());
  for (const auto& part : first_order_term_parts(p, t)) out += part;
  return out;
}

double leading_norm_prediction(const ExperimentParams& p, double t) {
  const auto modes = first_order_modes(p);
  return sobolev_norm(oscillatory_integral(modes[2], t), SobolevIndex{-p.s});
}

}  // namespace bbm
