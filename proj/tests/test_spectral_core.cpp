#include <doctest.h>

#include <cmath>
#include <random>

#include "bbm/reference.hpp"
#include "bbm/spectral_field.hpp"
#include "oracles.hpp"

using namespace bbm;

TEST_SUITE("spectral_core") {

TEST_CASE("sobolev norm of single modes") {
  SpectralField f(3);
  f.sin_at(3) = 1.0;  // sin(3x)
  CHECK(sobolev_norm(f, SobolevIndex{-1.0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  SpectralField g(2);
  g.sin_at(1) = 1.0;
  g.cos_at(2) = 1.0;  // sin(x) + cos(2x)
  CHECK(sobolev_norm(g, SobolevIndex{0.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("sobolev norm of the two-mode data at k1 = 8") {
  // direct two-term sum 8*(8^-2 + 9^-2), then square root
  const double amp = std::sqrt(8.0);
  SpectralField f(9);
  f.sin_at(8) = amp;
  f.sin_at(9) = amp;
  const double expected = std::sqrt(8.0 * (std::pow(8.0, -2.0) + std::pow(9.0, -2.0)));
  CHECK(expected == doctest::Approx(0.47304).epsilon(1e-4));
  CHECK(sobolev_norm(f, SobolevIndex{-1.0}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("norm ignores the mean and scales homogeneously") {
  std::mt19937 rng(7);
  const SpectralField f = testing::random_field(rng, 24);
  SpectralField shifted = f;
  shifted.mean() += 17.5;
  for (double r : {-2.0, -0.5, 0.0, 1.0}) {
    CHECK(sobolev_norm(f, SobolevIndex{r}) ==
          doctest::Approx(sobolev_norm(shifted, SobolevIndex{r})).epsilon(1e-15));
    CHECK(sobolev_norm(-3.25 * f, SobolevIndex{r}) ==
          doctest::Approx(3.25 * sobolev_norm(f, SobolevIndex{r})).epsilon(1e-13));
  }
}

TEST_CASE("single mode at wavenumber k has norm k^r exactly") {
  for (std::size_t k : {2u, 5u, 17u}) {
    SpectralField f(k);
    f.cos_at(k) = 1.5;
    for (double r : {-1.5, -1.0, 0.5}) {
      CHECK(sobolev_norm(f, SobolevIndex{r}) ==
            doctest::Approx(1.5 * std::pow(double(k), r)).epsilon(1e-14));
    }
  }
}

TEST_CASE("product of equal sines") {
  SpectralField f(4);
  f.sin_at(4) = 1.0;
  const SpectralField p = multiply(f, f);
  CHECK(p.mean() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.cos_coeff(8) == doctest::Approx(-0.5).epsilon(1e-15));
  for (std::size_t k = 1; k <= p.cutoff(); ++k) {
    if (k != 8) {
      CHECK(std::abs(p.cos_coeff(k)) < 1e-15);
    }
    CHECK(std::abs(p.sin_coeff(k)) < 1e-15);
  }
}

TEST_CASE("sin(2x) * sin(3x) = cos(x)/2 - cos(5x)/2") {
  SpectralField a(2), b(3);
  a.sin_at(2) = 1.0;
  b.sin_at(3) = 1.0;
  const SpectralField p = multiply(a, b);
  CHECK(p.cos_coeff(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.cos_coeff(5) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(p.mean() == doctest::Approx(0.0));
  CHECK(sobolev_norm(p, SobolevIndex{0}) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("convolution, grid path and scatter reference agree") {
  std::mt19937 rng(11);
  for (std::size_t cutoff : {16u, 64u, 150u}) {
    const SpectralField a = testing::random_field(rng, cutoff, false);
    const SpectralField b = testing::random_field(rng, cutoff, false);
    const SpectralField conv = multiply_conv(a, b);
    const SpectralField grid = multiply_grid(a, b);
    const SpectralField scatter = ref::multiply_scatter(a, b);
    CHECK(max_coeff_distance(conv, grid) < 1e-12);
    CHECK(max_coeff_distance(conv, scatter) < 1e-12);
  }
}

TEST_CASE("gather convolution fuzz against the scatter reference") {
  std::mt19937 rng(31);
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {0, 5}, {1, 1}, {1, 17}, {7, 33}, {33, 7}, {40, 41}, {3, 100}};
  for (const auto& [na, nb] : shapes) {
    const SpectralField a = testing::random_field(rng, na, false);
    const SpectralField b = testing::random_field(rng, nb, false);
    CHECK(max_coeff_distance(multiply_conv(a, b), ref::multiply_scatter(a, b)) < 1e-13);
    CHECK(max_coeff_distance(multiply_grid(a, b), ref::multiply_scatter(a, b)) < 1e-13);
  }
}

TEST_CASE("product with a constant field is a rescaling") {
  std::mt19937 rng(37);
  const SpectralField f = testing::random_field(rng, 9, false);
  const SpectralField scaled = multiply(SpectralField::constant(2.5), f);
  CHECK(max_coeff_distance(scaled, 2.5 * f) < 1e-15);
}

TEST_CASE("multiply is commutative, bilinear and padding-independent") {
  std::mt19937 rng(3);
  const SpectralField a = testing::random_field(rng, 12, false);
  const SpectralField b = testing::random_field(rng, 20, false);
  const SpectralField c = testing::random_field(rng, 20, false);

  CHECK(max_coeff_distance(multiply(a, b), multiply(b, a)) < 1e-15);

  const SpectralField lhs = multiply(a, 2.0 * b + c);
  SpectralField rhs = 2.0 * multiply(a, b);
  rhs += multiply(a, c);
  CHECK(max_coeff_distance(lhs, rhs) < 1e-13);

  const SpectralField padded = multiply(a.padded(64), b);
  CHECK(max_coeff_distance(padded, multiply(a, b)) < 1e-15);
}

TEST_CASE("square_truncated matches the truncated full product") {
  std::mt19937 rng(5);
  for (std::size_t cutoff : {24u, 600u}) {
    const SpectralField u = testing::random_field(rng, cutoff);
    const SpectralField full = multiply(u, u).truncated(cutoff);
    const SpectralField fast = square_truncated(u, cutoff);
    CHECK(max_coeff_distance(full, fast) < 1e-11);
  }
}

TEST_CASE("sample at quarter points and constants") {
  SpectralField f(1);
  f.sin_at(1) = 1.0;
  const auto values = sample(f, 4);
  REQUIRE(values.size() == 4);
  CHECK(values[0] == doctest::Approx(0.0));
  CHECK(values[1] == doctest::Approx(1.0));
  CHECK(values[2] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(values[3] == doctest::Approx(-1.0));

  const auto constant = sample(SpectralField::constant(0.5), 3);
  for (double v : constant) CHECK(v == doctest::Approx(0.5));
}

TEST_CASE("analyze(sample(f, 4N)) round-trips") {
  std::mt19937 rng(19);
  const std::size_t cutoff = 32;
  const SpectralField f = testing::random_field(rng, cutoff, false);
  const SpectralField back = analyze(sample(f, 4 * cutoff), cutoff);
  CHECK(max_coeff_distance(f, back) < 1e-12);
}

TEST_CASE("fft transforms match the direct reference") {
  std::mt19937 rng(23);
  const SpectralField f = testing::random_field(rng, 40, false);
  const auto fast = sample(f, 128);
  const auto direct = ref::sample_direct(f, 128);
  for (std::size_t j = 0; j < fast.size(); ++j) {
    CHECK(fast[j] == doctest::Approx(direct[j]).epsilon(1e-12));
  }
  const SpectralField back = analyze(fast, 40);
  const SpectralField back_direct = ref::analyze_direct(fast, 40);
  CHECK(max_coeff_distance(back, back_direct) < 1e-12);
}

TEST_CASE("round-trip through a non-power-of-two grid") {
  std::mt19937 rng(29);
  const std::size_t cutoff = 20;
  const SpectralField f = testing::random_field(rng, cutoff, false);
  const SpectralField back = analyze(sample(f, 2 * cutoff + 1), cutoff);
  CHECK(max_coeff_distance(f, back) < 1e-12);
}

TEST_CASE("fft recovers a known spectrum") {
  // sin(3x) + 2 cos(5x) sampled on 32 points
  SpectralField f(5);
  f.sin_at(3) = 1.0;
  f.cos_at(5) = 2.0;
  f.mean() = -0.25;
  const auto values = sample(f, 32);
  const SpectralField back = analyze(values, 8);
  CHECK(back.sin_coeff(3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(back.cos_coeff(5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(back.mean() == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(std::abs(back.sin_coeff(5)) < 1e-14);
  CHECK(std::abs(back.cos_coeff(3)) < 1e-14);
}

TEST_CASE("fields compare equal modulo zero padding") {
  SpectralField a(3);
  a.sin_at(2) = 1.0;
  SpectralField b = a.padded(10);
  CHECK(a == b);
  b.cos_at(9) = 1e-30;
  CHECK_FALSE(a == b);
}

TEST_CASE("tail fraction flags mass in the top decile") {
  SpectralField f(100);
  f.sin_at(1) = 1.0;
  CHECK(l2_tail_fraction(f, 0.1) == doctest::Approx(0.0));
  f.sin_at(95) = 1.0;
  CHECK(l2_tail_fraction(f, 0.1) == doctest::Approx(0.5));
  CHECK(l2_tail_fraction(SpectralField(16), 0.1) == doctest::Approx(0.0));
}

}  // TEST_SUITE
