#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bbm/params.hpp"
#include "bbm/spectral_field.hpp"

namespace bbm {

// Time-stamped states of one integration. states[0] is the initial data;
// every state is mean-zero.
struct Trajectory {
  ExperimentParams params;
  std::vector<double> times;          // increasing, starts at 0
  std::vector<SpectralField> states;  // one per time
};

// Norms of the full state and of the pieces of u = S(t)u0 + u1 + y, in
// H^(-s) ("ms") and L2 (coefficient l2, the r = 0 norm).
struct NormTable {
  double u_ms = 0, u_l2 = 0;
  double su0_ms = 0, su0_l2 = 0;
  double u1_ms = 0, u1_l2 = 0;
  double y_ms = 0, y_l2 = 0;
};

struct DecompositionSnapshot {
  double t = 0;
  SpectralField linear_part;  // S(t) u0
  SpectralField u1_part;      // closed-form first-order correction
  SpectralField remainder;    // state - linear_part - u1_part, exact
  NormTable norms;
};

struct IntegrateOptions {
  bool nonlinear = true;  // false integrates the free dispersion only
  // Mean-zero replacement for the two-mode data (tests, equilibria).
  std::optional<SpectralField> initial_data;
};

// Right-hand side Lambda u + (1/2) Lambda (u^2) with the square dealiased
// exactly and truncated back to the cutoff of u. Mean-zero in, mean-zero out.
SpectralField rhs_eval(const SpectralField& u);

// Pseudospectral evolution on [0, T]: exact mode rotation for the linear
// part (integrating factor) composed with classical 4th-order steps for the
// transformed nonlinearity. With params.n_modes == 0, the cutoff rule
// max(4*(2k1+2), 256) is applied and doubled until the spectral tail monitor
// passes; an explicit cutoff that trips the monitor throws TailOverflow with
// the required cutoff. Throws StepUnstable on norm growth > 1e6 in one step.
Trajectory integrate(const ExperimentParams& params, IntegrateOptions options = {});

// The truncated coefficient ODE system assembled independently of
// rhs_eval's path, integrated with an adaptive embedded 5(4) pair at local
// tolerance 1e-12. Desk-scale verification oracle: modes must be <= 64.
Trajectory galerkin_oracle(const ExperimentParams& params, std::size_t modes);

// The oracle's right-hand side on its own assembly path (exposed so the
// two assemblies can be compared directly).
SpectralField galerkin_rhs(const SpectralField& u);

// Per-time split u = S(t)u0 + u1 + y with the norm table filled in. The
// trajectory must start from the two-mode initial data of its params.
std::vector<DecompositionSnapshot> decompose(const Trajectory& traj);

// Evaluates the remainder integral identity
//   y(t) = int_0^t S(t-tau) Lambda [ G0 + G1 + G2 ](tau) dtau,
//   G0 = u1^2/2 + u1 S(tau)u0,  G1 = u1 y + y S(tau)u0,  G2 = y^2/2,
// by composite trapezoid over the stored output grid (products truncated to
// the trajectory cutoff) and returns the largest L2 distance to the stored
// remainder. Throws QuadratureUnderResolved if halving the quadrature step
// moves that distance by more than 10%.
double remainder_residual(const Trajectory& traj);

// The quadrature side of the identity above, one field per output time,
// reading u1 and y from the given snapshots. Exposed for tests (e.g. zeroed
// remainders isolate the G0 contribution).
std::vector<SpectralField> remainder_rhs_quadrature(
    const Trajectory& traj, const std::vector<DecompositionSnapshot>& snaps,
    std::size_t stride = 1);

struct Conserved {
  double mass = 0;    // integral of u = 2*pi*mean
  double energy = 0;  // integral of u^2 + u_x^2 = pi * sum (1+k^2)(s_k^2+c_k^2)
};

Conserved conserved_quantities(const SpectralField& u);

// CSV with header t,norm_L2,norm_Hms,norm_Su0,norm_u1,norm_y,ratio_y_u1.
// Part norms are in H^(-s); ratio_y_u1 is the L2 ratio used by the
// remainder control. 17 significant digits.
void write_trajectory_csv(std::ostream& os, const std::vector<DecompositionSnapshot>& snaps);

// One record per time: `t <value>` then mean and the sine/cosine pairs in
// index order.
void write_coefficient_dump(std::ostream& os, const Trajectory& traj);

}  // namespace bbm
