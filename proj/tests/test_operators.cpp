#include <doctest.h>

#include <cmath>
#include <random>

#include "bbm/operators.hpp"
#include "bbm/spectral_field.hpp"
#include "oracles.hpp"

using namespace bbm;

TEST_SUITE("bbm_operators") {

TEST_CASE("multiplier table invariants") {
  const MultiplierTable table(200);
  CHECK(table.at(1) == doctest::Approx(0.5).epsilon(1e-16));
  for (std::size_t k = 1; k <= 200; ++k) {
    CHECK(table.at(k) > 0.0);
    CHECK(table.at(k) <= 0.5);
    if (k > 1) CHECK(table.at(k) < table.at(k - 1));
  }
  CHECK(kappa(2) == doctest::Approx(0.4).epsilon(1e-16));
}

TEST_CASE("lambda on pure modes and constants") {
  SpectralField f(1);
  f.sin_at(1) = 1.0;
  const SpectralField lf = apply_lambda(f);
  CHECK(lf.cos_coeff(1) == doctest::Approx(-0.5).epsilon(1e-16));
  CHECK(std::abs(lf.sin_coeff(1)) == 0.0);

  SpectralField g(2);
  g.cos_at(2) = 1.0;
  const SpectralField lg = apply_lambda(g);
  CHECK(lg.sin_coeff(2) == doctest::Approx(0.4).epsilon(1e-16));

  const SpectralField constant = apply_lambda(SpectralField::constant(1.0));
  CHECK(constant.mean() == 0.0);
  CHECK(sobolev_norm(constant, SobolevIndex{0}) == 0.0);
}

TEST_CASE("propagate translates sin(x) by t/2") {
  SpectralField f(1);
  f.sin_at(1) = 1.0;
  const SpectralField moved = propagate(f, 1.0);
  CHECK(moved.sin_coeff(1) == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
  CHECK(moved.cos_coeff(1) == doctest::Approx(-std::sin(0.5)).epsilon(1e-15));
}

TEST_CASE("propagate at t = 0 is the identity") {
  std::mt19937 rng(2);
  const SpectralField f = testing::random_field(rng, 20, false);
  CHECK(max_coeff_distance(propagate(f, 0.0), f) == 0.0);
}

TEST_CASE("propagate is an isometry of every tested H^r") {
  std::mt19937 rng(4);
  const SpectralField f = testing::random_field(rng, 48);
  for (double r : {-2.0, -1.0, -0.5, 0.0, 1.0}) {
    const double before = sobolev_norm(f, SobolevIndex{r});
    const double after = sobolev_norm(propagate(f, 2.7), SobolevIndex{r});
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("group law and time reversal") {
  std::mt19937 rng(6);
  const SpectralField f = testing::random_field(rng, 32);
  const SpectralField two_step = propagate(propagate(f, 0.7), 1.9);
  const SpectralField one_step = propagate(f, 2.6);
  CHECK(max_coeff_distance(two_step, one_step) < 1e-12);
  CHECK(max_coeff_distance(propagate(propagate(f, 3.1), -3.1), f) < 1e-12);
}

TEST_CASE("lambda contracts by a factor 1/2, sharp only on mode 1") {
  std::mt19937 rng(8);
  const SpectralField f = testing::random_field(rng, 16);
  for (double r : {-1.0, 0.0, 1.0}) {
    CHECK(sobolev_norm(apply_lambda(f), SobolevIndex{r}) <=
          0.5 * sobolev_norm(f, SobolevIndex{r}) + 1e-15);
  }

  SpectralField mode1(1);
  mode1.sin_at(1) = 2.0;
  CHECK(sobolev_norm(apply_lambda(mode1), SobolevIndex{0}) ==
        doctest::Approx(0.5 * sobolev_norm(mode1, SobolevIndex{0})).epsilon(1e-15));

  SpectralField mode3(3);
  mode3.sin_at(3) = 2.0;
  CHECK(sobolev_norm(apply_lambda(mode3), SobolevIndex{0}) <
        0.5 * sobolev_norm(mode3, SobolevIndex{0}) - 1e-3);
}

TEST_CASE("lambda and the group commute") {
  std::mt19937 rng(10);
  const SpectralField f = testing::random_field(rng, 24);
  const SpectralField a = apply_lambda(propagate(f, 1.3));
  const SpectralField b = propagate(apply_lambda(f), 1.3);
  CHECK(max_coeff_distance(a, b) < 1e-14);
}

}  // TEST_SUITE
