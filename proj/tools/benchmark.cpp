// Micro-benchmark comparing the production kernels against the serial
// reference implementations: coefficient convolution (gather, OpenMP) vs
// pairwise scatter, transform-based grid products vs direct evaluation, and
// the end-to-end right-hand side. Prints one table row per size.

#include <chrono>
#include <cstdio>
#include <random>

#include "bbm/reference.hpp"
#include "bbm/solver.hpp"
#include "bbm/spectral_field.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

bbm::SpectralField random_field(std::mt19937& rng, std::size_t cutoff) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  bbm::SpectralField f(cutoff);
  for (std::size_t k = 1; k <= cutoff; ++k) {
    f.sin_at(k) = dist(rng);
    f.cos_at(k) = dist(rng);
  }
  return f;
}

double g_checksum = 0.0;  // keeps the optimizer from discarding kernel calls

template <typename F>
double time_ms(F&& body, int repeats) {
  // one warm-up evaluation, then the best of `repeats`
  g_checksum += body();
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto start = Clock::now();
    g_checksum += body();
    const auto stop = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled\n\n");
#endif

  std::mt19937 rng(1234);

  std::printf("%-28s %10s %14s %14s %9s\n", "kernel", "cutoff", "reference(ms)", "kernel(ms)",
              "speedup");

  for (std::size_t cutoff : {128u, 256u, 512u, 1024u}) {
    const bbm::SpectralField a = random_field(rng, cutoff);
    const bbm::SpectralField b = random_field(rng, cutoff);

    const double t_ref = time_ms(
        [&] { return bbm::ref::multiply_scatter(a, b).cos_coeff(1); }, 5);
    const double t_conv = time_ms([&] { return bbm::multiply_conv(a, b).cos_coeff(1); }, 5);
    std::printf("%-28s %10zu %14.3f %14.3f %8.1fx\n", "product: scatter vs gather", cutoff,
                t_ref, t_conv, t_ref / t_conv);

    const double t_grid = time_ms([&] { return bbm::multiply_grid(a, b).cos_coeff(1); }, 5);
    std::printf("%-28s %10zu %14.3f %14.3f %8.1fx\n", "product: scatter vs grid", cutoff, t_ref,
                t_grid, t_ref / t_grid);
  }
  std::printf("\n");

  for (std::size_t cutoff : {256u, 1024u, 4096u}) {
    const bbm::SpectralField f = random_field(rng, cutoff);
    const std::size_t n = 4 * cutoff;
    const double t_direct =
        time_ms([&] { return bbm::ref::sample_direct(f, n)[0]; }, 3);
    const double t_fast = time_ms([&] { return bbm::sample(f, n)[0]; }, 3);
    std::printf("%-28s %10zu %14.3f %14.3f %8.1fx\n", "synthesis: direct vs fft", cutoff,
                t_direct, t_fast, t_direct / t_fast);
  }
  std::printf("\n");

  for (std::size_t cutoff : {256u, 1024u, 4096u}) {
    const bbm::SpectralField u = random_field(rng, cutoff);
    const double t_rhs = time_ms([&] { return bbm::rhs_eval(u).cos_coeff(1); }, 5);
    std::printf("%-28s %10zu %14s %14.3f\n", "rhs_eval", cutoff, "-", t_rhs);
  }
  std::printf("\n(checksum %.3g)\n", g_checksum);
  return 0;
}
