#pragma once

#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "ctns/heat.hpp"
#include "ctns/initial.hpp"
#include "ctns/integrator.hpp"
#include "ctns/monitor.hpp"
#include "ctns/random.hpp"
#include "ctns/reporting.hpp"
#include "ctns/scaling.hpp"
#include "ctns/simulation.hpp"

namespace ctns {

// ---- reusable measurement kernels ----

/// max over the lattice of |chi(k) + sum_q phi(2^{-q} k) - 1|.
inline double partition_max_error(const GridPtr& grid) {
  const DyadicBank bank(grid);
  const TorusGrid& g = *grid;
  double worst = 0.0;
  for (int ksq = 0; ksq <= g.max_k_squared(); ++ksq) {
    double sum = 0.0;
    for (int q = -1; q <= bank.q_max(); ++q) sum += bank.multiplier(q, ksq);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

/// Empirical Bernstein constant: max of ||u_q||_r / (lambda_q^{d(1/s-1/r)}
/// ||u_q||_s) over seeded band-limited fields, all lattice shells.
inline double bernstein_constant(const GridPtr& grid, std::uint64_t seed, int trials, double s,
                                 double r) {
  const DyadicBank bank(grid);
  double worst = 0.0;
  for (int q = 1; q <= bank.q_max(); ++q)
    for (int t = 0; t < trials; ++t) {
      const SpectralField f =
          random_shell_field(grid, seed, 1000 + 17 * static_cast<std::uint64_t>(q) + t, q);
      worst = std::max(worst, bernstein_ratio(f, bank, q, s, r));
    }
  return worst;
}

struct LerayCheck {
  double idempotence = 0.0;         // max relative |P(Pf) - Pf|
  double gradient_annihilation = 0.0;  // max relative |P(grad psi)|
};

inline LerayCheck leray_checks(const GridPtr& grid, std::uint64_t seed, int trials) {
  LerayCheck out;
  for (int t = 0; t < trials; ++t) {
    const SpectralField v = random_smooth_vector(grid, seed, 9000 + t, 1.0, grid->n() / 4.0);
    const SpectralField pv = leray_project(v);
    const SpectralField ppv = leray_project(pv);
    double diff = 0.0;
    for (std::size_t i = 0; i < pv.data().size(); ++i)
      diff = std::max(diff, std::abs(ppv.data()[i] - pv.data()[i]));
    const double scale = std::max(1e-300, pv.max_abs());
    out.idempotence = std::max(out.idempotence, diff / scale);

    const SpectralField psi = random_smooth_scalar(grid, seed, 9500 + t, 1.0, grid->n() / 4.0);
    const SpectralField gpsi = gradient(psi);
    const SpectralField pg = leray_project(gpsi);
    out.gradient_annihilation =
        std::max(out.gradient_annihilation, pg.max_abs() / std::max(1e-300, gpsi.max_abs()));
  }
  return out;
}

struct HeatExactness {
  double single_mode_err = 0.0;  // vs e^{-t} amplitude after 10 integrator steps
  double per_mode_err = 0.0;     // max |c_hat(k) - c0_hat(k) e^{-|k|^2 t}| on a random field
  double exact_flow_err = 0.0;   // relative L2 error against the exact decaying flow at t = 0.5:
                                 // 2D Taylor-Green (e^{-2t}) or 3D ABC Beltrami (e^{-t})
};

inline HeatExactness heat_exactness(const GridPtr& grid, std::uint64_t seed) {
  HeatExactness out;
  const ModelParams p = ModelParams::defaults(grid->dim());

  {
    RealField c0 = RealField::sample_scalar(grid, [](auto x) { return std::sin(x[0]); });
    State s(0.0, SpectralField(grid, 1), to_spectral(c0), SpectralField(grid, grid->dim()));
    const RunResult rr = run(s, 1.0, 0.1, p);
    const SpectralField& ch = rr.final_state->c_hat();
    const std::size_t plus = grid->flat_of_wavevector({1, 0, 0});
    const std::complex<double> expect{0.0, -0.5 * std::exp(-1.0)};
    out.single_mode_err = std::abs(ch.coef(0, plus) - expect);
  }

  {
    const SpectralField c0 = random_smooth_scalar(grid, seed, 42, 1.0, grid->n() / 6.0);
    State s(0.0, SpectralField(grid, 1), c0, SpectralField(grid, grid->dim()));
    const double T = 0.25;
    const RunResult rr = run(s, T, 0.05, p);
    const SpectralField& ch = rr.final_state->c_hat();
    for (std::size_t i = 0; i < grid->points(); ++i) {
      const double e = std::exp(-static_cast<double>(grid->k_squared(i)) * T);
      out.per_mode_err = std::max(out.per_mode_err, std::abs(ch.coef(0, i) - e * c0.coef(0, i)));
    }
  }

  {
    // Exact decaying solutions with vanishing projected nonlinearity: the
    // 2D Taylor-Green vortex, and in 3D the ABC Beltrami flow (curl u = u,
    // so (u.grad)u is a pure gradient and the projector removes it).
    State s0 = State::zero(grid);
    double rate = 0.0;
    if (grid->dim() == 2) {
      InitialConditionSpec tg;
      tg.preset = "taylor_green";
      tg.amplitude = 1.0;
      s0 = generate_initial(tg, grid);
      rate = 2.0;
    } else {
      RealField u = RealField::sample_vector(grid, [](int comp, auto x) {
        if (comp == 0) return std::sin(x[2]) + std::cos(x[1]);
        if (comp == 1) return std::sin(x[0]) + std::cos(x[2]);
        return std::sin(x[1]) + std::cos(x[0]);
      });
      s0 = State(0.0, SpectralField(grid, 1), SpectralField(grid, 1), to_spectral(u));
      rate = 1.0;
    }
    const double T = 0.5;
    const RunResult rr = run(s0, T, 1e-3, p);
    const SpectralField& uh = rr.final_state->u_hat();
    const double decay = std::exp(-rate * T);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < uh.data().size(); ++i) {
      num += std::norm(uh.data()[i] - decay * s0.u_hat().data()[i]);
      den += std::norm(decay * s0.u_hat().data()[i]);
    }
    out.exact_flow_err = std::sqrt(num / den);
  }
  return out;
}

/// Max parabolic-regularity ratio over randomized heat solves with
/// single-mode and smooth multi-mode data, constant and oscillatory
/// forcing. Inputs stay below |k| <= 6 so the trapezoidal quadrature error
/// is far below the acceptance tolerance.
inline double parabolic_max_ratio(const GridPtr& grid, std::uint64_t seed, int trials,
                                  const std::vector<double>& alphas, double* max_ut_ratio = nullptr) {
  double worst = 0.0, worst_ut = 0.0;
  const double T = 0.25;
  const double dt = 2.5e-4;
  for (int t = 0; t < trials; ++t) {
    SpectralField u0(grid, 1);
    SpectralField famp(grid, 1);
    if (t % 2 == 0) {
      // single mode with random amplitude/phase
      const int kx = 1 + static_cast<int>(detail::splitmix64(seed + 31 * t) % 5);
      const int ky = static_cast<int>(detail::splitmix64(seed + 31 * t + 7) % 4);
      const auto z = detail::mode_gaussian(seed, kx, ky, 0, 0, 500 + t);
      u0.coef(0, grid->flat_of_wavevector({kx, ky, 0})) = z;
      u0.coef(0, grid->flat_of_wavevector({-kx, -ky, 0})) = std::conj(z);
      const auto w = detail::mode_gaussian(seed, kx, ky, 0, 1, 600 + t);
      famp.coef(0, grid->flat_of_wavevector({kx, ky, 0})) = w;
      famp.coef(0, grid->flat_of_wavevector({-kx, -ky, 0})) = std::conj(w);
    } else {
      u0 = random_scalar_spectrum(grid, seed, 700 + t, 6,
                                  [](double ksq) { return std::exp(-ksq / 16.0); });
      famp = random_scalar_spectrum(grid, seed, 800 + t, 6,
                                    [](double ksq) { return std::exp(-ksq / 16.0); });
    }
    const double omega = static_cast<double>(t % 5);
    HeatForcing forcing = [&famp, omega](double time) {
      return std::cos(omega * time) * famp;
    };
    const HeatTrajectory traj = heat_solve(u0, forcing, T, dt);
    for (double alpha : alphas) {
      const ParabolicReport rep = parabolic_regularity_check(traj, alpha);
      worst = std::max(worst, rep.ratio_u);
      worst_ut = std::max(worst_ut, rep.ratio_ut);
    }
  }
  if (max_ut_ratio) *max_ut_ratio = worst_ut;
  return worst;
}

struct BudgetRichardson {
  std::array<double, 3> res_coarse{0, 0, 0};  // max |residual| per field at dt
  std::array<double, 3> res_fine{0, 0, 0};    // at dt/2
  std::array<double, 3> ratio{0, 0, 0};
};

/// Residual convergence of the shell-energy balances on a nonlinear run.
/// For the dealiased Galerkin system the balances are identities up to time
/// discretization, so halving dt divides the residuals by about four.
/// Disabling dealiasing in the integrator (debug switch) breaks the premise
/// and the ratio collapses.
inline BudgetRichardson budget_richardson(const GridPtr& grid, std::uint64_t seed,
                                          bool break_dealias = false) {
  // Spectral content up to the dealias cutoff: the quadratic products then
  // genuinely exceed the retained band, so the 2/3 rule carries weight.
  InitialConditionSpec ic;
  ic.preset = "random_smooth";
  ic.amplitude = 0.3;
  ic.seed = seed;
  ic.k0 = grid->n() / 3.0;
  const State s0 = generate_initial(ic, grid);
  const ModelParams params = ModelParams::defaults(grid->dim());
  const Monitor monitor(grid, MonitorConfig{}, params);
  StepOptions opts;
  opts.dealias_products = !break_dealias;

  auto max_res = [&](double dt) {
    const Trajectory traj = run_monitored(s0, 0.1, dt, params, monitor, 1, opts);
    std::array<double, 3> m{0, 0, 0};
    for (std::size_t i = 1; i < traj.records.size(); ++i) {
      m[0] = std::max(m[0], std::abs(traj.records[i].residual_n));
      m[1] = std::max(m[1], std::abs(traj.records[i].residual_c));
      m[2] = std::max(m[2], std::abs(traj.records[i].residual_u));
    }
    return m;
  };

  BudgetRichardson out;
  out.res_coarse = max_res(1e-3);
  out.res_fine = max_res(5e-4);
  for (int i = 0; i < 3; ++i)
    out.ratio[i] = out.res_coarse[i] / std::max(out.res_fine[i], 1e-300);
  return out;
}

struct ScalingRoundTrip {
  double mismatch_rel = 0.0;        // scale-then-simulate vs simulate-then-scale
  double integrator_err_rel = 0.0;  // Richardson estimate at the same dt
  bool information_loss = false;
};

namespace detail {

inline double state_rel_l2_diff(const State& a, const State& b) {
  double num = 0.0, den = 0.0;
  auto acc = [&](const SpectralField& x, const SpectralField& y) {
    for (std::size_t i = 0; i < x.data().size(); ++i) {
      num += std::norm(x.data()[i] - y.data()[i]);
      den += std::norm(y.data()[i]);
    }
  };
  acc(a.n_hat(), b.n_hat());
  acc(a.c_hat(), b.c_hat());
  acc(a.u_hat(), b.u_hat());
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace detail

/// lambda = 2 round trip: simulate D(0) to T and rescale, against
/// simulating the rescaled data to T / 4. Single-mode data keep the
/// dealias loss at zero; the discrepancy is pure integrator error. The
/// rescaled run uses gravity lambda * grav: the buoyancy term scales as
/// lambda^2 against lambda^3 for the rest of the u equation, so the
/// constant gravitational pull is part of the scaling map.
inline ScalingRoundTrip scaling_roundtrip(const GridPtr& grid, double T = 0.25, double dt = 1e-3,
                                          double amplitude = 0.05) {
  InitialConditionSpec ic;
  ic.preset = "single_mode";
  ic.amplitude = amplitude;
  const State s0 = generate_initial(ic, grid);
  const ModelParams params = ModelParams::defaults(grid->dim());
  ModelParams params_scaled = params;
  for (auto& gcomp : params_scaled.grav) gcomp *= 2.0;

  ScalingRoundTrip out;
  const auto scaled0 = scale_transform(s0, 2.0);
  out.information_loss = scaled0.information_loss;

  const RunResult direct = run(s0, T, dt, params);
  const auto scaled_final = scale_transform(*direct.final_state, 2.0);
  out.information_loss = out.information_loss || scaled_final.information_loss;

  const RunResult rescaled = run(scaled0.state, T / 4.0, dt, params_scaled);
  out.mismatch_rel = detail::state_rel_l2_diff(rescaled.final_state.value(), scaled_final.state);

  const RunResult direct_fine = run(s0, T, dt / 2.0, params);
  const RunResult rescaled_fine = run(scaled0.state, T / 4.0, dt / 2.0, params_scaled);
  out.integrator_err_rel =
      detail::state_rel_l2_diff(*direct.final_state, *direct_fine.final_state) +
      detail::state_rel_l2_diff(*rescaled.final_state, *rescaled_fine.final_state);
  return out;
}

// ---- the bundled suite ----

struct PropertyResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct VerifyOptions {
  int dim = 2;
  int n = 32;
  std::uint64_t seed = 12345;
  bool break_dealias = false;  // mutation switch exercised by the suite's own tests
};

inline std::vector<PropertyResult> verify_suite(const VerifyOptions& opt) {
  std::vector<PropertyResult> results;
  GridPtr grid = make_grid(opt.dim, opt.n);

  {
    PropertyResult r{"partition_of_unity", false, partition_max_error(grid), 1e-12, ""};
    r.pass = r.measured < r.bound;
    results.push_back(r);
  }
  {
    PropertyResult r{"bernstein_l2_linf", false,
                     bernstein_constant(grid, opt.seed, 100, 2.0, inf), 1.0, ""};
    r.pass = r.measured < r.bound;
    results.push_back(r);
  }
  {
    const LerayCheck lc = leray_checks(grid, opt.seed, 50);
    PropertyResult r{"leray_projector", false, std::max(lc.idempotence, lc.gradient_annihilation),
                     1e-12, "idempotence + gradient annihilation"};
    r.pass = r.measured < r.bound;
    results.push_back(r);
  }
  {
    const HeatExactness he = heat_exactness(grid, opt.seed);
    PropertyResult r{"heat_linear_exactness", false,
                     std::max(he.single_mode_err, he.per_mode_err), 1e-12, ""};
    r.pass = r.measured < r.bound;
    results.push_back(r);
    PropertyResult r2{"exact_flow_decay", false, he.exact_flow_err, 1e-8,
                      opt.dim == 2 ? "Taylor-Green, e^{-2t}" : "ABC Beltrami, e^{-t}"};
    r2.pass = r2.measured < r2.bound;
    results.push_back(r2);
  }
  {
    PropertyResult r{"parabolic_regularity_ratio", false,
                     parabolic_max_ratio(grid, opt.seed, 20, {-1.0, 0.0, 1.0}), 1.05, ""};
    r.pass = r.measured <= r.bound;
    results.push_back(r);
  }
  {
    const BudgetRichardson br = budget_richardson(grid, opt.seed, opt.break_dealias);
    double worst_dev = 0.0;
    for (double rr : br.ratio) worst_dev = std::max(worst_dev, std::abs(rr - 4.0));
    PropertyResult r{"budget_residual_convergence", false, worst_dev, 1.0,
                     "ratios n/c/u = " + detail::fmt_g17(br.ratio[0]) + "/" +
                         detail::fmt_g17(br.ratio[1]) + "/" + detail::fmt_g17(br.ratio[2])};
    r.pass = worst_dev <= r.bound;  // each ratio within 4 +- 1 (i.e. +-25%)
    results.push_back(r);
  }
  {
    const ScalingRoundTrip sr = scaling_roundtrip(grid);
    PropertyResult r{"scaling_round_trip", false, sr.mismatch_rel,
                     10.0 * sr.integrator_err_rel + 1e-13, ""};
    r.pass = r.measured <= r.bound;
    results.push_back(r);
  }
  return results;
}

inline void print_verify_report(std::ostream& os, const std::vector<PropertyResult>& results) {
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << " " << r.name << " measured=" << detail::fmt_g17(r.measured)
       << " bound=" << detail::fmt_g17(r.bound);
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
  }
}

inline bool all_passed(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace ctns
