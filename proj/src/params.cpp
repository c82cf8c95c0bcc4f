#include "bbm/params.hpp"

#include <algorithm>
#include <cmath>

namespace bbm {

double ExperimentParams::default_horizon() const {
  return std::pow(static_cast<double>(k1), -mu * gamma);
}

double ExperimentParams::effective_horizon() const {
  return horizon > 0.0 ? horizon : default_horizon();
}

std::size_t ExperimentParams::default_cutoff() const {
  return std::max<std::size_t>(4 * (2 * k1 + 2), 256);
}

double ExperimentParams::default_dt(double T) const {
  const double amp = std::pow(static_cast<double>(k1), gamma);
  return std::min(T / 200.0, 0.01 / (1.0 + amp));
}

}  // namespace bbm
