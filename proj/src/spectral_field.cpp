#include "bbm/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "bbm/fft.hpp"

namespace bbm {

namespace {

constexpr std::size_t kConvCutoffLimit = 512;  // convolution below, grid above
constexpr std::int64_t kParallelWork = 1 << 16;

// Shared gather kernel: exact coefficient convolution of a and b for output
// modes 1..max_mode. Each output mode is accumulated independently in a
// fixed order, so the result does not depend on the thread count.
void conv_gather(const SpectralField& a, const SpectralField& b, SpectralField& r,
                 std::size_t max_mode) {
  const std::int64_t na = static_cast<std::int64_t>(a.cutoff());
  const std::int64_t nb = static_cast<std::int64_t>(b.cutoff());
  const auto as = a.sines(), ac = a.cosines();
  const auto bs = b.sines(), bc = b.cosines();
  const double a0 = a.mean(), b0 = b.mean();

  double mean = a0 * b0;
  for (std::int64_t j = 0; j < std::min(na, nb); ++j)
    mean += 0.5 * (as[j] * bs[j] + ac[j] * bc[j]);
  r.mean() = mean;

  const std::int64_t mmax = static_cast<std::int64_t>(max_mode);
  const std::int64_t work = mmax * std::min(na, nb);

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (work > kParallelWork)
#endif
  for (std::int64_t m = 1; m <= mmax; ++m) {
    double rs = 0.0, rc = 0.0;

    // sum pairs j + k = m
    const std::int64_t jlo = std::max<std::int64_t>(1, m - nb);
    const std::int64_t jhi = std::min(na, m - 1);
    for (std::int64_t j = jlo; j <= jhi; ++j) {
      const std::int64_t k = m - j;
      rc += 0.5 * (ac[j - 1] * bc[k - 1] - as[j - 1] * bs[k - 1]);
      rs += 0.5 * (as[j - 1] * bc[k - 1] + ac[j - 1] * bs[k - 1]);
    }
    // difference pairs j - k = m
    for (std::int64_t k = 1; k <= std::min(nb, na - m); ++k) {
      const std::int64_t j = m + k;
      rc += 0.5 * (as[j - 1] * bs[k - 1] + ac[j - 1] * bc[k - 1]);
      rs += 0.5 * (as[j - 1] * bc[k - 1] - ac[j - 1] * bs[k - 1]);
    }
    // difference pairs k - j = m
    for (std::int64_t j = 1; j <= std::min(na, nb - m); ++j) {
      const std::int64_t k = m + j;
      rc += 0.5 * (as[j - 1] * bs[k - 1] + ac[j - 1] * bc[k - 1]);
      rs += 0.5 * (ac[j - 1] * bs[k - 1] - as[j - 1] * bc[k - 1]);
    }
    if (m <= nb) {
      rs += a0 * bs[m - 1];
      rc += a0 * bc[m - 1];
    }
    if (m <= na) {
      rs += b0 * as[m - 1];
      rc += b0 * ac[m - 1];
    }
    r.sin_at(static_cast<std::size_t>(m)) = rs;
    r.cos_at(static_cast<std::size_t>(m)) = rc;
  }
}

// Synthesis on a power-of-two grid through the inverse transform; exact when
// n >= 2*cutoff + 1.
std::vector<double> synth_pow2(const SpectralField& f, std::size_t n) {
  std::vector<std::complex<double>> spec(n, {0.0, 0.0});
  const double nd = static_cast<double>(n);
  spec[0] = {nd * f.mean(), 0.0};
  const auto s = f.sines(), c = f.cosines();
  for (std::size_t k = 1; k <= f.cutoff(); ++k) {
    const std::complex<double> half{0.5 * nd * c[k - 1], -0.5 * nd * s[k - 1]};
    spec[k] = half;
    spec[n - k] = std::conj(half);
  }
  detail::fft_inverse(spec);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = spec[j].real();
  return out;
}

SpectralField analyze_pow2(std::span<const double> samples, std::size_t cutoff) {
  const std::size_t n = samples.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t j = 0; j < n; ++j) spec[j] = {samples[j], 0.0};
  detail::fft_forward(spec);
  SpectralField f(cutoff);
  const double inv = 2.0 / static_cast<double>(n);
  f.mean() = spec[0].real() / static_cast<double>(n);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    f.sin_at(k) = -inv * spec[k].imag();
    f.cos_at(k) = inv * spec[k].real();
  }
  return f;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Exact angle 2*pi*((k*j) mod n)/n; the integer product stays well below
// 2^53 at the sizes in play.
double grid_angle(std::size_t k, std::size_t j, std::size_t n) {
  const std::uint64_t prod = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(j);
  return 2.0 * std::numbers::pi * static_cast<double>(prod % n) / static_cast<double>(n);
}

SpectralField square_on_grid(const SpectralField& u, std::size_t keep) {
  // modes above `keep` alias to n - m > keep only if n > 2*cutoff + keep
  const std::size_t n = detail::next_pow2(2 * u.cutoff() + keep + 2);
  std::vector<double> values = synth_pow2(u, n);
  for (auto& v : values) v *= v;
  return analyze_pow2(values, keep);
}

}  // namespace

SpectralField SpectralField::padded(std::size_t cutoff) const {
  SpectralField out(std::max(cutoff, this->cutoff()));
  out.mean_ = mean_;
  std::copy(sines_.begin(), sines_.end(), out.sines_.begin());
  std::copy(cosines_.begin(), cosines_.end(), out.cosines_.begin());
  return out;
}

SpectralField SpectralField::truncated(std::size_t cutoff) const {
  const std::size_t keep = std::min(cutoff, this->cutoff());
  SpectralField out(cutoff);
  out.mean_ = mean_;
  std::copy_n(sines_.begin(), keep, out.sines_.begin());
  std::copy_n(cosines_.begin(), keep, out.cosines_.begin());
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  if (rhs.cutoff() > cutoff()) {
    sines_.resize(rhs.cutoff(), 0.0);
    cosines_.resize(rhs.cutoff(), 0.0);
  }
  mean_ += rhs.mean_;
  for (std::size_t i = 0; i < rhs.sines_.size(); ++i) {
    sines_[i] += rhs.sines_[i];
    cosines_[i] += rhs.cosines_[i];
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& rhs) {
  if (rhs.cutoff() > cutoff()) {
    sines_.resize(rhs.cutoff(), 0.0);
    cosines_.resize(rhs.cutoff(), 0.0);
  }
  mean_ -= rhs.mean_;
  for (std::size_t i = 0; i < rhs.sines_.size(); ++i) {
    sines_[i] -= rhs.sines_[i];
    cosines_[i] -= rhs.cosines_[i];
  }
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  mean_ *= a;
  for (auto& v : sines_) v *= a;
  for (auto& v : cosines_) v *= a;
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) {
  if (a.mean_ != b.mean_) return false;
  const std::size_t n = std::max(a.cutoff(), b.cutoff());
  for (std::size_t k = 1; k <= n; ++k) {
    if (a.sin_coeff(k) != b.sin_coeff(k)) return false;
    if (a.cos_coeff(k) != b.cos_coeff(k)) return false;
  }
  return true;
}

double sobolev_norm(const SpectralField& f, SobolevIndex index) {
  const auto s = f.sines(), c = f.cosines();
  double sum = 0.0;
  if (index.r == 0.0) {
    for (std::size_t k = 1; k <= f.cutoff(); ++k)
      sum += s[k - 1] * s[k - 1] + c[k - 1] * c[k - 1];
  } else {
    const double e = 2.0 * index.r;
    for (std::size_t k = 1; k <= f.cutoff(); ++k) {
      const double m = s[k - 1] * s[k - 1] + c[k - 1] * c[k - 1];
      if (m != 0.0) sum += std::pow(static_cast<double>(k), e) * m;
    }
  }
  return std::sqrt(sum);
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  const std::size_t n = std::max(a.cutoff(), b.cutoff());
  double sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double ds = a.sin_coeff(k) - b.sin_coeff(k);
    const double dc = a.cos_coeff(k) - b.cos_coeff(k);
    sum += ds * ds + dc * dc;
  }
  return std::sqrt(sum);
}

double max_coeff_distance(const SpectralField& a, const SpectralField& b) {
  double worst = std::abs(a.mean() - b.mean());
  const std::size_t n = std::max(a.cutoff(), b.cutoff());
  for (std::size_t k = 1; k <= n; ++k) {
    worst = std::max(worst, std::abs(a.sin_coeff(k) - b.sin_coeff(k)));
    worst = std::max(worst, std::abs(a.cos_coeff(k) - b.cos_coeff(k)));
  }
  return worst;
}

SpectralField multiply_conv(const SpectralField& a, const SpectralField& b) {
  // iterate pair sums over the smaller cutoff
  const bool swap = a.cutoff() > b.cutoff();
  const SpectralField& lo = swap ? b : a;
  const SpectralField& hi = swap ? a : b;
  SpectralField r(lo.cutoff() + hi.cutoff());
  conv_gather(lo, hi, r, r.cutoff());
  return r;
}

SpectralField multiply_grid(const SpectralField& a, const SpectralField& b) {
  const std::size_t degree = a.cutoff() + b.cutoff();
  const std::size_t n = detail::next_pow2(2 * degree + 2);
  std::vector<double> va = synth_pow2(a, n);
  const std::vector<double> vb = synth_pow2(b, n);
  for (std::size_t j = 0; j < n; ++j) va[j] *= vb[j];
  return analyze_pow2(va, degree);
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
  if (std::max(a.cutoff(), b.cutoff()) < kConvCutoffLimit) return multiply_conv(a, b);
  return multiply_grid(a, b);
}

SpectralField square_truncated(const SpectralField& u, std::size_t keep) {
  if (u.cutoff() < kConvCutoffLimit) {
    SpectralField r(std::min(keep, 2 * u.cutoff()));
    conv_gather(u, u, r, r.cutoff());
    return r.padded(keep).truncated(keep);
  }
  return square_on_grid(u, keep);
}

std::vector<double> sample(const SpectralField& f, std::size_t n) {
  if (is_pow2(n) && n >= 2 * f.cutoff() + 1) return synth_pow2(f, n);

  std::vector<double> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n * f.cutoff() > 1u << 16)
#endif
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(n); ++j) {
    double v = f.mean();
    for (std::size_t k = 1; k <= f.cutoff(); ++k) {
      const double angle = grid_angle(k, static_cast<std::size_t>(j), n);
      v += f.sin_coeff(k) * std::sin(angle) + f.cos_coeff(k) * std::cos(angle);
    }
    out[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

SpectralField analyze(std::span<const double> samples, std::size_t cutoff) {
  const std::size_t n = samples.size();
  if (is_pow2(n) && cutoff < n / 2) return analyze_pow2(samples, cutoff);

  SpectralField f(cutoff);
  double mean = 0.0;
  for (double v : samples) mean += v;
  f.mean() = mean / static_cast<double>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n * cutoff > 1u << 16)
#endif
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(cutoff); ++k) {
    double fs = 0.0, fc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = grid_angle(static_cast<std::size_t>(k), j, n);
      fs += samples[j] * std::sin(angle);
      fc += samples[j] * std::cos(angle);
    }
    const double inv = 2.0 / static_cast<double>(n);
    f.sin_at(static_cast<std::size_t>(k)) = inv * fs;
    f.cos_at(static_cast<std::size_t>(k)) = inv * fc;
  }
  return f;
}

double l2_tail_fraction(const SpectralField& f, double top_fraction) {
  const std::size_t n = f.cutoff();
  if (n == 0) return 0.0;
  const std::size_t first_tail =
      static_cast<std::size_t>(std::floor((1.0 - top_fraction) * static_cast<double>(n))) + 1;
  double total = 0.0, tail = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double m = f.sin_coeff(k) * f.sin_coeff(k) + f.cos_coeff(k) * f.cos_coeff(k);
    total += m;
    if (k >= first_tail) tail += m;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace bbm
