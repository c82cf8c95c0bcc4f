#include "bbm/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

namespace bbm::detail {

namespace {

// Twiddle factors e^{-2 pi i k / n}, k < n/2, cached per length. Lengths in
// play are few (one per distinct grid size), so a mutex-guarded map is fine.
std::shared_ptr<const std::vector<std::complex<double>>> twiddles_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const std::vector<std::complex<double>>>> cache;

  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  auto table = std::make_shared<std::vector<std::complex<double>>>(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    (*table)[k] = {std::cos(angle), std::sin(angle)};
  }
  cache.emplace(n, table);
  return table;
}

void bit_reverse_permute(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  std::size_t j = 0;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

void fft_radix2(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  auto twiddles = twiddles_for(n);

  bit_reverse_permute(data);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = (*twiddles)[k * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = data[block + k];
        const std::complex<double> v = data[block + k + len / 2] * w;
        data[block + k] = u + v;
        data[block + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace

void fft_forward(std::vector<std::complex<double>>& data) { fft_radix2(data, false); }

void fft_inverse(std::vector<std::complex<double>>& data) {
  fft_radix2(data, true);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace bbm::detail
