#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bbm/spectral_field.hpp"

// Plain serial reference implementations of the hot kernels. They are kept
// deliberately naive (pairwise scatter loops, per-point trig evaluation) and
// are used by the test suite to cross-check the production kernels and by
// the benchmark tool to measure their speedup.
namespace bbm::ref {

// Product by scattering every coefficient pair through the product-to-sum
// identities. O(N_a * N_b).
SpectralField multiply_scatter(const SpectralField& a, const SpectralField& b);

// Direct evaluation with one sin/cos call per (mode, point) pair. Phase
// angles are reduced in exact integer arithmetic before the trig call.
std::vector<double> sample_direct(const SpectralField& f, std::size_t n);
SpectralField analyze_direct(std::span<const double> samples, std::size_t cutoff);

}  // namespace bbm::ref
