#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bbm::detail {

// In-place iterative radix-2 transforms on power-of-two lengths.
// Forward uses the e^{-i 2 pi j m / n} kernel; inverse includes the 1/n
// scaling. Twiddle tables are cached per length and shared across threads.
void fft_forward(std::vector<std::complex<double>>& data);
void fft_inverse(std::vector<std::complex<double>>& data);

std::size_t next_pow2(std::size_t n);

}  // namespace bbm::detail
