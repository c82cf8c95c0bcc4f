#pragma once

#include <cstddef>
#include <vector>

#include "bbm/spectral_field.hpp"

namespace bbm {

// kappa(k) = k / (1 + k^2): the multiplier amplitude and, equally, the phase
// speed of mode k under the dispersion group. kappa(1) = 1/2 is the maximum
// and the sequence decreases strictly from there.
inline double kappa(std::size_t k) {
  const double kd = static_cast<double>(k);
  return kd / (1.0 + kd * kd);
}

struct MultiplierTable {
  explicit MultiplierTable(std::size_t n);
  double at(std::size_t k) const { return kappa[k - 1]; }  // 1-based
  std::vector<double> kappa;
};

// The smoothing multiplier Lambda = -d_x (1 - d_x^2)^{-1}:
//   sin(kx) -> -kappa_k cos(kx),   cos(kx) -> kappa_k sin(kx),
// constants are annihilated. Contracts every H^r norm by at least 1/2.
SpectralField apply_lambda(const SpectralField& f);

// Dispersion group S(t): mode k is translated by the phase kappa_k * t,
//   sin(kx) -> sin(kx - kappa_k t),   cos(kx) -> cos(kx - kappa_k t),
// the mean is untouched. An isometry of every H^r. Phases are computed
// directly from kappa_k * t, so the group law holds to roundoff at any t.
SpectralField propagate(const SpectralField& f, double t);

}  // namespace bbm
