#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ctns/field.hpp"

namespace ctns {

/// Time-indexed spectral source for the heat harness.
using HeatForcing = std::function<SpectralField(double t)>;

/// Dense record of a linear heat solve: states and forcing samples at every
/// step boundary.
struct HeatTrajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<SpectralField> forcing;
};

/// Solve u_t - Lap u = f per mode: exact integrating-factor propagation of
/// the linear part, trapezoidal treatment of the forcing,
///   u^{m+1} = E u^m + dt/2 (E f(t_m) + f(t_{m+1})),  E = e^{-|k|^2 dt}.
inline HeatTrajectory heat_solve(const SpectralField& u0, const HeatForcing& forcing, double t_end,
                                 double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("heat_solve: dt must be positive");
  const GridPtr grid = u0.grid_ptr();
  const TorusGrid& g = *grid;

  auto sample = [&](double t) {
    if (forcing) return forcing(t);
    return SpectralField(grid, u0.components());
  };

  HeatTrajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);
  traj.forcing.push_back(sample(0.0));

  long total = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  if (t_end <= 0.0) total = 0;

  for (long m = 0; m < total; ++m) {
    const double t0 = traj.times.back();
    const double step_dt = (m == total - 1) ? (t_end - t0) : dt;
    const double t1 = t0 + step_dt;
    const SpectralField& u = traj.states.back();
    const SpectralField& f0 = traj.forcing.back();
    SpectralField f1 = sample(t1);
    SpectralField next(grid, u.components());
    for (int c = 0; c < u.components(); ++c) {
      for (std::size_t i = 0; i < g.points(); ++i) {
        const double e = std::exp(-static_cast<double>(g.k_squared(i)) * step_dt);
        next.coef(c, i) = e * (u.coef(c, i) + 0.5 * step_dt * f0.coef(c, i)) +
                          0.5 * step_dt * f1.coef(c, i);
      }
    }
    traj.times.push_back(t1);
    traj.states.push_back(std::move(next));
    traj.forcing.push_back(std::move(f1));
  }
  return traj;
}

struct ParabolicReport {
  double u_l2hs2_sq = 0.0;    // ||u||^2_{L^2(0,T; H^{alpha+2})}
  double ut_l2hs_sq = 0.0;    // ||u_t||^2_{L^2(0,T; H^alpha)}
  double u0_hs1_sq = 0.0;     // ||u0||^2_{H^{alpha+1}}
  double f_l2hs_sq = 0.0;     // ||f||^2_{L^2(0,T; H^alpha)}
  double ratio_u = 0.0;       // u_l2hs2_sq / (u0_hs1_sq + f_l2hs_sq)
  double ratio_ut = 0.0;
};

/// Discrete check of the heat-regularity gain: the solution is two
/// derivatives smoother than the source in the L^2-in-time sense. Time
/// integrals use the trapezoidal rule on the step grid; u_t is evaluated
/// from the equation as Lap u + f.
inline ParabolicReport parabolic_regularity_check(const HeatTrajectory& traj, double alpha,
                                                  double u0_norm, double f_norm) {
  if (traj.states.size() < 2) throw std::invalid_argument("parabolic check: trajectory too short");
  const TorusGrid& g = traj.states.front().grid();

  auto hs_sq = [&](const SpectralField& F, double s) {
    const double v = sobolev_norm(F, s);
    return v * v;
  };

  ParabolicReport rep;
  rep.u0_hs1_sq = u0_norm * u0_norm;
  rep.f_l2hs_sq = f_norm * f_norm;

  double acc_u = 0.0, acc_ut = 0.0;
  for (std::size_t m = 0; m + 1 < traj.times.size(); ++m) {
    const double h = traj.times[m + 1] - traj.times[m];
    double vals_u[2], vals_ut[2];
    for (int e = 0; e < 2; ++e) {
      const SpectralField& u = traj.states[m + e];
      vals_u[e] = hs_sq(u, alpha + 2.0);
      SpectralField ut(u.grid_ptr(), u.components());
      const SpectralField& f = traj.forcing[m + e];
      for (int c = 0; c < u.components(); ++c)
        for (std::size_t i = 0; i < g.points(); ++i)
          ut.coef(c, i) = -static_cast<double>(g.k_squared(i)) * u.coef(c, i) + f.coef(c, i);
      vals_ut[e] = hs_sq(ut, alpha);
    }
    acc_u += 0.5 * h * (vals_u[0] + vals_u[1]);
    acc_ut += 0.5 * h * (vals_ut[0] + vals_ut[1]);
  }
  rep.u_l2hs2_sq = acc_u;
  rep.ut_l2hs_sq = acc_ut;
  const double denom = rep.u0_hs1_sq + rep.f_l2hs_sq;
  if (denom > 0.0) {
    rep.ratio_u = rep.u_l2hs2_sq / denom;
    rep.ratio_ut = rep.ut_l2hs_sq / denom;
  }
  return rep;
}

/// Convenience overload computing the reference norms from the trajectory.
inline ParabolicReport parabolic_regularity_check(const HeatTrajectory& traj, double alpha) {
  const double u0_norm = sobolev_norm(traj.states.front(), alpha + 1.0);
  double acc_f = 0.0;
  for (std::size_t m = 0; m + 1 < traj.times.size(); ++m) {
    const double h = traj.times[m + 1] - traj.times[m];
    const double a = sobolev_norm(traj.forcing[m], alpha);
    const double b = sobolev_norm(traj.forcing[m + 1], alpha);
    acc_f += 0.5 * h * (a * a + b * b);
  }
  return parabolic_regularity_check(traj, alpha, u0_norm, std::sqrt(acc_f));
}

}  // namespace ctns
