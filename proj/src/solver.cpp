#include "bbm/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "bbm/duhamel.hpp"
#include "bbm/errors.hpp"
#include "bbm/inflation.hpp"
#include "bbm/operators.hpp"

namespace bbm {

namespace {

constexpr double kTailLimit = 1e-10;       // top-decile share of the L2 mass
constexpr double kGrowthLimit = 1e6;       // per-step norm growth guard
constexpr std::size_t kMaxAutoCutoff = 1 << 17;

// Nonlinearity seen from the rotating frame v = S(-t) u:
//   g(t, v) = (1/2) S(-t) Lambda P_N (S(t) v)^2.
// The linear flow is handled exactly by the frame itself.
SpectralField rotated_rhs(const SpectralField& v, double t, std::size_t keep) {
  const SpectralField u = propagate(v, t);
  SpectralField w = apply_lambda(square_truncated(u, keep));
  w *= 0.5;
  return propagate(w, -t);
}

void check_tail(const SpectralField& u, std::size_t cutoff) {
  if (l2_tail_fraction(u, 0.1) >= kTailLimit) {
    throw TailOverflow(2 * cutoff,
                       "spectral tail monitor tripped at cutoff " + std::to_string(cutoff) +
                           "; at least " + std::to_string(2 * cutoff) + " modes required");
  }
}

Trajectory integrate_at_cutoff(const ExperimentParams& params, std::size_t cutoff,
                               const IntegrateOptions& options) {
  const double T = params.effective_horizon();
  const std::size_t points = std::max<std::size_t>(params.output_points, 1);

  Trajectory traj;
  traj.params = params;
  traj.params.n_modes = cutoff;

  SpectralField v = options.initial_data
                        ? options.initial_data->padded(cutoff).truncated(cutoff)
                        : build_initial_data(params.k1, params.gamma).padded(cutoff);
  if (std::abs(v.mean()) > 0.0) {
    throw std::invalid_argument("integrate: evolution states must be mean-zero");
  }
  check_tail(v, cutoff);
  traj.times.push_back(0.0);
  traj.states.push_back(v);
  if (points == 1 || T <= 0.0) return traj;

  const double spacing = T / static_cast<double>(points - 1);
  const double dt_rule = params.dt > 0.0 ? params.dt : params.default_dt(T);
  const std::size_t substeps =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(spacing / dt_rule)));
  const double h = spacing / static_cast<double>(substeps);

  for (std::size_t i = 1; i < points; ++i) {
    for (std::size_t sub = 0; sub < substeps; ++sub) {
      const double t = spacing * static_cast<double>(i - 1) + h * static_cast<double>(sub);
      if (options.nonlinear) {
        const double before = sobolev_norm(v, SobolevIndex{0.0});
        const SpectralField s1 = rotated_rhs(v, t, cutoff);
        const SpectralField s2 = rotated_rhs(v + (0.5 * h) * s1, t + 0.5 * h, cutoff);
        const SpectralField s3 = rotated_rhs(v + (0.5 * h) * s2, t + 0.5 * h, cutoff);
        const SpectralField s4 = rotated_rhs(v + h * s3, t + h, cutoff);
        v += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        const double after = sobolev_norm(v, SobolevIndex{0.0});
        if (after > kGrowthLimit * (before + 1e-300)) {
          throw StepUnstable("norm grew from " + std::to_string(before) + " to " +
                             std::to_string(after) + " within one step");
        }
      }
    }
    const double t_out = spacing * static_cast<double>(i);
    SpectralField u = propagate(v, t_out);
    check_tail(u, cutoff);
    traj.times.push_back(t_out);
    traj.states.push_back(std::move(u));
  }
  return traj;
}

}  // namespace

SpectralField rhs_eval(const SpectralField& u) {
  SpectralField nonlinear = apply_lambda(square_truncated(u, u.cutoff()));
  nonlinear *= 0.5;
  return apply_lambda(u) + nonlinear;
}

Trajectory integrate(const ExperimentParams& params, IntegrateOptions options) {
  const std::size_t min_cutoff = 2 * (2 * params.k1 + 2);
  if (params.n_modes > 0) {
    if (params.n_modes < min_cutoff) {
      throw TailOverflow(min_cutoff, "cutoff " + std::to_string(params.n_modes) +
                                         " below the minimum " + std::to_string(min_cutoff));
    }
    return integrate_at_cutoff(params, params.n_modes, options);
  }

  std::size_t cutoff = params.default_cutoff();
  for (;;) {
    try {
      return integrate_at_cutoff(params, cutoff, options);
    } catch (const TailOverflow&) {
      if (2 * cutoff > kMaxAutoCutoff) throw;
      cutoff *= 2;
    }
  }
}

// ---------------------------------------------------------------------------
// Independent Galerkin oracle: the truncated coefficient ODE assembled from
// the product-to-sum identities directly, integrated with an adaptive
// Dormand-Prince 5(4) pair.

namespace {

// State layout: z = [f_1..f_M, g_1..g_M].
void oracle_rhs(const std::vector<double>& z, std::vector<double>& dz, std::size_t m_count) {
  const double* uf = z.data();
  const double* ug = z.data() + m_count;

  // sine/cosine coefficients of u^2, modes 1..m_count
  std::vector<double> sq_s(m_count, 0.0), sq_c(m_count, 0.0);
  for (std::size_t j = 1; j <= m_count; ++j) {
    for (std::size_t k = 1; k <= m_count; ++k) {
      const double ss = uf[j - 1] * uf[k - 1];
      const double cc = ug[j - 1] * ug[k - 1];
      const double sc = uf[j - 1] * ug[k - 1];
      const double cs = ug[j - 1] * uf[k - 1];
      if (j != k) {
        const std::size_t diff = j > k ? j - k : k - j;
        sq_c[diff - 1] += 0.5 * (ss + cc);
        sq_s[diff - 1] += (j > k ? 0.5 : -0.5) * (sc - cs);
      }
      const std::size_t sum = j + k;
      if (sum <= m_count) {
        sq_c[sum - 1] += 0.5 * (cc - ss);
        sq_s[sum - 1] += 0.5 * (sc + cs);
      }
    }
  }

  for (std::size_t m = 1; m <= m_count; ++m) {
    const double kap = kappa(m);
    dz[m - 1] = kap * (ug[m - 1] + 0.5 * sq_c[m - 1]);
    dz[m_count + m - 1] = -kap * (uf[m - 1] + 0.5 * sq_s[m - 1]);
  }
}

struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
};

SpectralField field_from_state(const std::vector<double>& z, std::size_t m_count) {
  SpectralField f(m_count);
  for (std::size_t k = 1; k <= m_count; ++k) {
    f.sin_at(k) = z[k - 1];
    f.cos_at(k) = z[m_count + k - 1];
  }
  return f;
}

}  // namespace

SpectralField galerkin_rhs(const SpectralField& u) {
  const std::size_t m_count = u.cutoff();
  std::vector<double> z(2 * m_count), dz(2 * m_count);
  for (std::size_t k = 1; k <= m_count; ++k) {
    z[k - 1] = u.sin_coeff(k);
    z[m_count + k - 1] = u.cos_coeff(k);
  }
  oracle_rhs(z, dz, m_count);
  return field_from_state(dz, m_count);
}

Trajectory galerkin_oracle(const ExperimentParams& params, std::size_t modes) {
  if (modes > 64) throw std::invalid_argument("galerkin_oracle: modes must be <= 64");
  constexpr double tol = 1e-12;

  const double T = params.effective_horizon();
  const std::size_t points = std::max<std::size_t>(params.output_points, 1);

  Trajectory traj;
  traj.params = params;
  traj.params.n_modes = modes;

  const SpectralField u0 = build_initial_data(params.k1, params.gamma).padded(modes);
  const std::size_t dim = 2 * modes;
  std::vector<double> z(dim);
  for (std::size_t k = 1; k <= modes; ++k) {
    z[k - 1] = u0.sin_coeff(k);
    z[modes + k - 1] = u0.cos_coeff(k);
  }

  check_tail(u0, modes);
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  if (points == 1 || T <= 0.0) return traj;

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> work(dim), z5(dim);

  double t = 0.0;
  double h = std::min(1e-3, T / static_cast<double>(points - 1));
  const double spacing = T / static_cast<double>(points - 1);

  for (std::size_t i = 1; i < points; ++i) {
    const double t_out = spacing * static_cast<double>(i);
    while (t < t_out) {
      // clamp to land exactly on the output time without feeding the
      // shortened step back into the controller
      const double gap = t_out - t;
      const bool landing = h >= gap;
      const double h_step = landing ? gap : h;

      oracle_rhs(z, k1, modes);
      for (std::size_t n = 0; n < dim; ++n) work[n] = z[n] + h_step * Dopri5::a21 * k1[n];
      oracle_rhs(work, k2, modes);
      for (std::size_t n = 0; n < dim; ++n)
        work[n] = z[n] + h_step * (Dopri5::a31 * k1[n] + Dopri5::a32 * k2[n]);
      oracle_rhs(work, k3, modes);
      for (std::size_t n = 0; n < dim; ++n)
        work[n] =
            z[n] + h_step * (Dopri5::a41 * k1[n] + Dopri5::a42 * k2[n] + Dopri5::a43 * k3[n]);
      oracle_rhs(work, k4, modes);
      for (std::size_t n = 0; n < dim; ++n)
        work[n] = z[n] + h_step * (Dopri5::a51 * k1[n] + Dopri5::a52 * k2[n] +
                                   Dopri5::a53 * k3[n] + Dopri5::a54 * k4[n]);
      oracle_rhs(work, k5, modes);
      for (std::size_t n = 0; n < dim; ++n)
        work[n] = z[n] + h_step * (Dopri5::a61 * k1[n] + Dopri5::a62 * k2[n] +
                                   Dopri5::a63 * k3[n] + Dopri5::a64 * k4[n] +
                                   Dopri5::a65 * k5[n]);
      oracle_rhs(work, k6, modes);
      for (std::size_t n = 0; n < dim; ++n)
        z5[n] = z[n] + h_step * (Dopri5::b1 * k1[n] + Dopri5::b3 * k3[n] + Dopri5::b4 * k4[n] +
                                 Dopri5::b5 * k5[n] + Dopri5::b6 * k6[n]);
      oracle_rhs(z5, k7, modes);

      double err = 0.0;
      for (std::size_t n = 0; n < dim; ++n) {
        const double e =
            h_step * (Dopri5::e1 * k1[n] + Dopri5::e3 * k3[n] + Dopri5::e4 * k4[n] +
                      Dopri5::e5 * k5[n] + Dopri5::e6 * k6[n] + Dopri5::e7 * k7[n]);
        const double scale = tol + tol * std::max(std::abs(z[n]), std::abs(z5[n]));
        err += (e / scale) * (e / scale);
      }
      err = std::sqrt(err / static_cast<double>(dim));

      const bool accepted = err <= 1.0;
      if (accepted) {
        t = landing ? t_out : t + h_step;
        z.swap(z5);
      }
      const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      if (!landing || !accepted) {
        h = h_step * std::clamp(factor, 0.2, 5.0);
        if (h < 1e-15 * std::max(1.0, t_out)) {
          throw StepUnstable("oracle step size underflow at t = " + std::to_string(t));
        }
      }
    }

    SpectralField u = field_from_state(z, modes);
    check_tail(u, modes);
    traj.times.push_back(t_out);
    traj.states.push_back(std::move(u));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Decomposition and the remainder integral identity.

std::vector<DecompositionSnapshot> decompose(const Trajectory& traj) {
  const ExperimentParams& p = traj.params;
  const std::size_t cutoff = traj.states.empty() ? 0 : traj.states.front().cutoff();
  const SpectralField u0 = build_initial_data(p.k1, p.gamma).padded(cutoff);
  if (!traj.states.empty() && max_coeff_distance(traj.states.front(), u0) > 1e-12) {
    throw std::invalid_argument("decompose: trajectory does not start from the two-mode data");
  }

  const SobolevIndex ms{-p.s}, l2{0.0};
  std::vector<DecompositionSnapshot> snaps;
  snaps.reserve(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    DecompositionSnapshot snap;
    snap.t = traj.times[i];
    snap.linear_part = propagate(u0, snap.t);
    snap.u1_part = first_order_term(p, snap.t).padded(cutoff).truncated(cutoff);
    snap.remainder = traj.states[i] - snap.linear_part - snap.u1_part;

    const SpectralField& u = traj.states[i];
    snap.norms.u_ms = sobolev_norm(u, ms);
    snap.norms.u_l2 = sobolev_norm(u, l2);
    snap.norms.su0_ms = sobolev_norm(snap.linear_part, ms);
    snap.norms.su0_l2 = sobolev_norm(snap.linear_part, l2);
    snap.norms.u1_ms = sobolev_norm(snap.u1_part, ms);
    snap.norms.u1_l2 = sobolev_norm(snap.u1_part, l2);
    snap.norms.y_ms = sobolev_norm(snap.remainder, ms);
    snap.norms.y_l2 = sobolev_norm(snap.remainder, l2);
    snaps.push_back(std::move(snap));
  }
  return snaps;
}

std::vector<SpectralField> remainder_rhs_quadrature(
    const Trajectory& traj, const std::vector<DecompositionSnapshot>& snaps,
    std::size_t stride) {
  if (snaps.empty()) return {};
  stride = std::max<std::size_t>(stride, 1);
  const std::size_t cutoff = traj.states.empty() ? 0 : traj.states.front().cutoff();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < snaps.size(); i += stride) idx.push_back(i);

  // W_j = S(-tau_j) Lambda [ G(tau_j) ] with G = w^2/2 + w S(tau)u0 and
  // w = u1 + y; G0 + G1 + G2 collapses to exactly this.
  std::vector<SpectralField> rotated(idx.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t n = 0; n < static_cast<std::int64_t>(idx.size()); ++n) {
    const DecompositionSnapshot& snap = snaps[idx[static_cast<std::size_t>(n)]];
    const SpectralField w = snap.u1_part + snap.remainder;
    SpectralField g = multiply(w, w);
    g *= 0.5;
    g += multiply(w, snap.linear_part);
    rotated[static_cast<std::size_t>(n)] =
        propagate(apply_lambda(g.truncated(cutoff)), -snap.t);
  }

  std::vector<SpectralField> out(idx.size());
  SpectralField acc(cutoff);
  out[0] = SpectralField(cutoff);
  for (std::size_t n = 1; n < idx.size(); ++n) {
    const double dt = snaps[idx[n]].t - snaps[idx[n - 1]].t;
    acc += (0.5 * dt) * (rotated[n - 1] + rotated[n]);
    out[n] = propagate(acc, snaps[idx[n]].t);
  }
  return out;
}

double remainder_residual(const Trajectory& traj) {
  const auto snaps = decompose(traj);
  if (snaps.size() <= 1) return 0.0;

  const auto fine = remainder_rhs_quadrature(traj, snaps, 1);

  // Self-check: the reconstruction must be stable under one step halving,
  // measured against the scale of the remainder it reconstructs.
  if (snaps.size() >= 5) {
    const auto coarse = remainder_rhs_quadrature(traj, snaps, 2);
    double shift = 0.0, scale = 0.0;
    for (std::size_t n = 0; n < coarse.size(); ++n) {
      shift = std::max(shift, l2_distance(fine[2 * n], coarse[n]));
    }
    for (const auto& snap : snaps) scale = std::max(scale, snap.norms.y_l2);
    if (shift > 0.10 * std::max(scale, 1e-300)) {
      throw QuadratureUnderResolved(
          "remainder quadrature moved by " + std::to_string(shift) + " under step halving "
          "against a remainder scale of " + std::to_string(scale));
    }
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    worst = std::max(worst, l2_distance(fine[i], snaps[i].remainder));
  }
  return worst;
}

Conserved conserved_quantities(const SpectralField& u) {
  Conserved q;
  q.mass = 2.0 * std::numbers::pi * u.mean();
  double sum = 0.0;
  for (std::size_t k = 1; k <= u.cutoff(); ++k) {
    const double kd = static_cast<double>(k);
    sum += (1.0 + kd * kd) * (u.sin_coeff(k) * u.sin_coeff(k) + u.cos_coeff(k) * u.cos_coeff(k));
  }
  q.energy = std::numbers::pi * sum;
  return q;
}

void write_trajectory_csv(std::ostream& os, const std::vector<DecompositionSnapshot>& snaps) {
  os << "t,norm_L2,norm_Hms,norm_Su0,norm_u1,norm_y,ratio_y_u1\n";
  char line[512];
  for (const auto& snap : snaps) {
    const double ratio = snap.norms.u1_l2 > 0.0 ? snap.norms.y_l2 / snap.norms.u1_l2 : 0.0;
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", snap.t,
                  snap.norms.u_l2, snap.norms.u_ms, snap.norms.su0_ms, snap.norms.u1_ms,
                  snap.norms.y_ms, ratio);
    os << line;
  }
}

void write_coefficient_dump(std::ostream& os, const Trajectory& traj) {
  char buf[128];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "t %.17g\n", traj.times[i]);
    os << buf;
    const SpectralField& u = traj.states[i];
    std::snprintf(buf, sizeof buf, "%.17g\n", u.mean());
    os << buf;
    for (std::size_t k = 1; k <= u.cutoff(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", u.sin_coeff(k), u.cos_coeff(k));
      os << buf;
    }
  }
}

}  // namespace bbm
