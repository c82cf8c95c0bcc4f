#include "bbm/operators.hpp"

#include <cmath>

namespace bbm {

MultiplierTable::MultiplierTable(std::size_t n) {
  kappa.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) kappa.push_back(bbm::kappa(k));
}

SpectralField apply_lambda(const SpectralField& f) {
  SpectralField out(f.cutoff());
  for (std::size_t k = 1; k <= f.cutoff(); ++k) {
    const double kap = kappa(k);
    out.sin_at(k) = kap * f.cos_coeff(k);
    out.cos_at(k) = -kap * f.sin_coeff(k);
  }
  return out;
}

SpectralField propagate(const SpectralField& f, double t) {
  SpectralField out(f.cutoff());
  out.mean() = f.mean();
  for (std::size_t k = 1; k <= f.cutoff(); ++k) {
    const double theta = kappa(k) * t;
    const double c = std::cos(theta), s = std::sin(theta);
    // a sin(kx - theta) + b cos(kx - theta) expanded back onto sin/cos
    out.sin_at(k) = c * f.sin_coeff(k) + s * f.cos_coeff(k);
    out.cos_at(k) = -s * f.sin_coeff(k) + c * f.cos_coeff(k);
  }
  return out;
}

}  // namespace bbm
