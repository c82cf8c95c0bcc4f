#include <doctest.h>

#include <cmath>
#include <random>

#include "bbm/errors.hpp"
#include "bbm/inflation.hpp"
#include "bbm/operators.hpp"
#include "bbm/solver.hpp"
#include "oracles.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace bbm;

namespace {

ExperimentParams small_params() {
  ExperimentParams p;
  p.k1 = 2;
  p.gamma = 0.5;
  p.s = 1.0;
  p.mu = 1.8;
  p.n_modes = 32;
  p.horizon = 1.0;
  p.output_points = 101;
  return p;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("rhs of the zero state is zero") {
  const SpectralField zero(16);
  CHECK(sobolev_norm(rhs_eval(zero), SobolevIndex{0}) == 0.0);
}

TEST_CASE("rhs of sin(x)") {
  SpectralField u(2);
  u.sin_at(1) = 1.0;
  const SpectralField rhs = rhs_eval(u);
  CHECK(rhs.cos_coeff(1) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(rhs.sin_coeff(2) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(rhs.mean() == 0.0);
  CHECK(std::abs(rhs.sin_coeff(1)) < 1e-16);
  CHECK(std::abs(rhs.cos_coeff(2)) < 1e-16);
}

TEST_CASE("rhs matches the independently assembled coefficient system") {
  std::mt19937 rng(13);
  const SpectralField u = testing::random_field(rng, 8);
  CHECK(max_coeff_distance(rhs_eval(u), galerkin_rhs(u)) < 1e-12);
}

TEST_CASE("zero data stays at the zero equilibrium") {
  ExperimentParams p = small_params();
  p.output_points = 20;
  IntegrateOptions options;
  options.initial_data = SpectralField(p.n_modes);
  const Trajectory traj = integrate(p, options);
  for (const auto& state : traj.states) {
    CHECK(sobolev_norm(state, SobolevIndex{0}) == 0.0);
  }
  CHECK(sobolev_norm(galerkin_rhs(SpectralField(16)), SobolevIndex{0}) == 0.0);
}

TEST_CASE("states stay mean-zero along the evolution") {
  const Trajectory traj = integrate(small_params());
  for (const auto& state : traj.states) {
    CHECK(std::abs(state.mean()) <= 1e-14);
  }
}

TEST_CASE("with the nonlinearity disabled, integrate is the free group") {
  ExperimentParams p = small_params();
  p.output_points = 11;
  const Trajectory traj = integrate(p, IntegrateOptions{.nonlinear = false, .initial_data = {}});
  const SpectralField u0 = build_initial_data(p.k1, p.gamma).padded(p.n_modes);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    CHECK(max_coeff_distance(traj.states[i], propagate(u0, traj.times[i])) < 1e-12);
  }
}

TEST_CASE("self-convergence at fourth order") {
  ExperimentParams p = small_params();
  p.output_points = 2;  // only the endpoint matters here

  const Trajectory reference = galerkin_oracle(p, p.n_modes);
  auto endpoint_error = [&](double dt) {
    ExperimentParams q = p;
    q.dt = dt;
    const Trajectory traj = integrate(q);
    return l2_distance(traj.states.back(), reference.states.back());
  };

  const double e1 = endpoint_error(0.05);
  const double e2 = endpoint_error(0.025);
  const double e3 = endpoint_error(0.0125);
  const double order12 = std::log2(e1 / e2);
  const double order23 = std::log2(e2 / e3);
  CHECK(std::abs(order12 - 4.0) <= 0.3);
  CHECK(std::abs(order23 - 4.0) <= 0.3);
}

TEST_CASE("solver and oracle agree on the small case") {
  ExperimentParams p = small_params();
  p.output_points = 200;
  const Trajectory fast = integrate(p);
  const Trajectory oracle = galerkin_oracle(p, 32);
  REQUIRE(fast.times.size() == oracle.times.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < fast.times.size(); ++i) {
    sup = std::max(sup, l2_distance(fast.states[i], oracle.states[i]));
  }
  CHECK(sup <= 1e-8);
}

TEST_CASE("mass and energy drift stay below 1e-8 relative") {
  ExperimentParams p = small_params();
  p.output_points = 50;
  for (const Trajectory& traj : {integrate(p), galerkin_oracle(p, 32)}) {
    const Conserved first = conserved_quantities(traj.states.front());
    for (const auto& state : traj.states) {
      const Conserved q = conserved_quantities(state);
      CHECK(std::abs(q.mass - first.mass) <= 1e-8 * std::max(1.0, std::abs(first.mass)));
      CHECK(std::abs(q.energy - first.energy) <= 1e-8 * std::abs(first.energy));
    }
  }
}

TEST_CASE("energy of sin(x) is 2 pi") {
  SpectralField u(1);
  u.sin_at(1) = 1.0;
  const Conserved q = conserved_quantities(u);
  CHECK(q.energy == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(q.mass == 0.0);
}

TEST_CASE("decomposition identity holds coefficientwise") {
  ExperimentParams p = small_params();
  p.output_points = 40;
  const Trajectory traj = integrate(p);
  const auto snaps = decompose(traj);
  REQUIRE(snaps.size() == traj.times.size());

  CHECK(sobolev_norm(snaps.front().remainder, SobolevIndex{0}) == 0.0);
  CHECK(sobolev_norm(snaps.front().u1_part, SobolevIndex{0}) == 0.0);

  for (std::size_t i = 0; i < snaps.size(); ++i) {
    SpectralField rebuilt = snaps[i].linear_part + snaps[i].u1_part + snaps[i].remainder;
    CHECK(max_coeff_distance(rebuilt, traj.states[i]) < 1e-12);
  }
}

TEST_CASE("remainder quadrature with zeroed y isolates the G0 source") {
  ExperimentParams p = small_params();
  p.output_points = 60;
  p.horizon = 0.4;
  const Trajectory traj = integrate(p);
  auto snaps = decompose(traj);
  const std::size_t cutoff = traj.states.front().cutoff();
  for (auto& snap : snaps) snap.remainder = SpectralField(cutoff);

  const auto from_g0 = remainder_rhs_quadrature(traj, snaps, 1);

  // direct quadrature of S(t-tau) Lambda [ u1^2/2 + u1 S(tau)u0 ]
  const SpectralField u0 = build_initial_data(p.k1, p.gamma);
  for (std::size_t i : {std::size_t{10}, snaps.size() - 1}) {
    const double t = snaps[i].t;
    const SpectralField direct = testing::field_quadrature(
        [&](double tau) {
          const SpectralField u1 = first_order_term(p, tau);
          const SpectralField su0 = propagate(u0, tau).padded(u1.cutoff());
          SpectralField g = multiply(u1, u1);
          g *= 0.5;
          g += multiply(u1, su0);
          return propagate(apply_lambda(g), t - tau);
        },
        0.0, t, 1e-12);
    CHECK(max_coeff_distance(from_g0[i], direct) < 1e-5);
  }
}

TEST_CASE("remainder residual is small on a dense grid at k1 = 4") {
  ExperimentParams p;
  p.k1 = 4;
  p.gamma = 0.8;
  p.s = 1.0;
  p.mu = 1.8;
  p.output_points = 200;
  const Trajectory traj = integrate(p);
  CHECK(remainder_residual(traj) <= 1e-6);
}

TEST_CASE("residual of a single-point grid is zero") {
  ExperimentParams p = small_params();
  p.output_points = 1;
  const Trajectory traj = integrate(p);
  CHECK(remainder_residual(traj) == 0.0);
}

TEST_CASE("explicit cutoff below the minimum throws TailOverflow") {
  ExperimentParams p = small_params();
  p.n_modes = 8;  // below 2 (2 k1 + 2) = 12
  CHECK_THROWS_AS(integrate(p), TailOverflow);
}

TEST_CASE("under-resolved cascade trips the tail monitor") {
  ExperimentParams p;
  p.k1 = 2;
  p.s = 4.0;
  p.gamma = 3.0;  // amplitude 8: strong cascade
  p.mu = 1.8;
  p.n_modes = 12;
  p.horizon = 2.0;
  p.output_points = 40;
  CHECK_THROWS_AS(integrate(p), TailOverflow);
}

TEST_CASE("violent data with an oversized step throws StepUnstable") {
  ExperimentParams p;
  p.k1 = 2;
  p.s = 40.0;
  p.gamma = 31.0;  // amplitude 2^31
  p.mu = 1.8;
  p.n_modes = 64;
  p.dt = 0.5;
  p.horizon = 1.0;
  p.output_points = 3;
  CHECK_THROWS_AS(integrate(p), StepUnstable);
}

TEST_CASE("oracle rejects cutoffs beyond desk scale") {
  CHECK_THROWS_AS(galerkin_oracle(small_params(), 65), std::invalid_argument);
}

TEST_CASE("automatic cutoff doubles until the tail monitor passes") {
  ExperimentParams p;
  p.k1 = 2;
  p.gamma = 0.5;
  p.s = 1.0;
  p.mu = 1.8;
  p.horizon = 0.01;
  p.output_points = 3;
  // high-mode content near the default cutoff of 256 forces one doubling
  IntegrateOptions options;
  SpectralField data(250);
  data.sin_at(250) = 0.01;
  options.initial_data = data;
  const Trajectory traj = integrate(p, options);
  CHECK(traj.states.front().cutoff() == 512);
}

TEST_CASE("sparse output grid trips the quadrature self-check") {
  ExperimentParams p = small_params();
  p.horizon = 6.0;
  p.output_points = 5;
  const Trajectory traj = integrate(p);
  CHECK_THROWS_AS(remainder_residual(traj), QuadratureUnderResolved);
}

#ifdef _OPENMP
TEST_CASE("trajectories do not depend on the thread count") {
  ExperimentParams p;
  p.k1 = 64;  // large enough for the parallel product kernels to engage
  p.gamma = 0.8;
  p.s = 1.0;
  p.mu = 1.8;
  p.output_points = 5;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Trajectory serial = integrate(p);
  omp_set_num_threads(saved > 1 ? saved : 2);
  const Trajectory parallel = integrate(p);
  omp_set_num_threads(saved);
  REQUIRE(serial.times.size() == parallel.times.size());
  for (std::size_t i = 0; i < serial.times.size(); ++i) {
    CHECK(max_coeff_distance(serial.states[i], parallel.states[i]) == 0.0);
  }
}
#endif

}  // TEST_SUITE
