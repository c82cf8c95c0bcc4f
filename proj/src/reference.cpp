#include "bbm/reference.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bbm::ref {

namespace {

double grid_angle(std::size_t k, std::size_t j, std::size_t n) {
  const std::uint64_t prod = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(j);
  return 2.0 * std::numbers::pi * static_cast<double>(prod % n) / static_cast<double>(n);
}

}  // namespace

SpectralField multiply_scatter(const SpectralField& a, const SpectralField& b) {
  SpectralField r(a.cutoff() + b.cutoff());
  r.mean() = a.mean() * b.mean();
  for (std::size_t k = 1; k <= b.cutoff(); ++k) {
    r.sin_at(k) += a.mean() * b.sin_coeff(k);
    r.cos_at(k) += a.mean() * b.cos_coeff(k);
  }
  for (std::size_t j = 1; j <= a.cutoff(); ++j) {
    r.sin_at(j) += b.mean() * a.sin_coeff(j);
    r.cos_at(j) += b.mean() * a.cos_coeff(j);
    for (std::size_t k = 1; k <= b.cutoff(); ++k) {
      const double ss = a.sin_coeff(j) * b.sin_coeff(k);
      const double cc = a.cos_coeff(j) * b.cos_coeff(k);
      const double sc = a.sin_coeff(j) * b.cos_coeff(k);
      const double cs = a.cos_coeff(j) * b.sin_coeff(k);
      const std::size_t sum = j + k;

      // sin j sin k = (cos(j-k) - cos(j+k)) / 2
      // cos j cos k = (cos(j-k) + cos(j+k)) / 2
      // sin j cos k = (sin(j+k) + sin(j-k)) / 2
      if (j == k) {
        r.mean() += 0.5 * (ss + cc);
      } else {
        const std::size_t diff = j > k ? j - k : k - j;
        r.cos_at(diff) += 0.5 * (ss + cc);
        const double sign = j > k ? 1.0 : -1.0;
        r.sin_at(diff) += sign * 0.5 * (sc - cs);
      }
      r.cos_at(sum) += 0.5 * (cc - ss);
      r.sin_at(sum) += 0.5 * (sc + cs);
    }
  }
  return r;
}

std::vector<double> sample_direct(const SpectralField& f, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = f.mean();
    for (std::size_t k = 1; k <= f.cutoff(); ++k) {
      const double angle = grid_angle(k, j, n);
      v += f.sin_coeff(k) * std::sin(angle) + f.cos_coeff(k) * std::cos(angle);
    }
    out[j] = v;
  }
  return out;
}

SpectralField analyze_direct(std::span<const double> samples, std::size_t cutoff) {
  const std::size_t n = samples.size();
  SpectralField f(cutoff);
  double mean = 0.0;
  for (double v : samples) mean += v;
  f.mean() = mean / static_cast<double>(n);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    double fs = 0.0, fc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = grid_angle(k, j, n);
      fs += samples[j] * std::sin(angle);
      fc += samples[j] * std::cos(angle);
    }
    f.sin_at(k) = 2.0 * fs / static_cast<double>(n);
    f.cos_at(k) = 2.0 * fc / static_cast<double>(n);
  }
  return f;
}

}  // namespace bbm::ref
