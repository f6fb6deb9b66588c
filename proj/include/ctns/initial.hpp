#pragma once

#include <cmath>

#include "ctns/config.hpp"
#include "ctns/operators.hpp"
#include "ctns/random.hpp"
#include "ctns/snapshot.hpp"

namespace ctns {

namespace detail {

inline State finish_state(SpectralField n, SpectralField c, SpectralField u) {
  // Initial data live on the dealiased (Galerkin) lattice; the dynamics
  // never repopulate the masked modes.
  return State(0.0, dealias(n), dealias(c), dealias(leray_project(u)));
}

/// Rescale a perturbation so its grid sup equals the requested amplitude;
/// keeps 1 + perturbation nonnegative whenever amplitude <= 1.
inline SpectralField scaled_to_sup(SpectralField f, double amplitude) {
  const double sup = lp_norm(to_real(f), inf);
  if (sup == 0.0) return f;
  return (amplitude / sup) * f;
}

}  // namespace detail

/// Deterministic initial states. Presets keep c >= 0 and produce the same
/// bytes for the same (preset, amplitude, seed) on every invocation.
inline State generate_initial(const InitialConditionSpec& ic, GridPtr grid) {
  const TorusGrid& g = *grid;
  const int dim = g.dim();
  const double a = ic.amplitude;

  if (!ic.snapshot_prefix.empty()) return checkpoint_load(ic.snapshot_prefix).state;

  if (ic.preset == "zero") return State::zero(grid);

  if (ic.preset == "single_mode") {
    // n = 1 + a cos x1, c = 1 + a sin x2, u = a (sin x2, 0[, 0])
    RealField n = RealField::sample_scalar(grid, [a](auto x) { return 1.0 + a * std::cos(x[0]); });
    RealField c = RealField::sample_scalar(grid, [a](auto x) { return 1.0 + a * std::sin(x[1]); });
    RealField u = RealField::sample_vector(grid, [a](int comp, auto x) {
      return comp == 0 ? a * std::sin(x[1]) : 0.0;
    });
    if (a > 1.0) throw config_error("single_mode: amplitude > 1 makes c negative");
    return detail::finish_state(to_spectral(n), to_spectral(c), to_spectral(u));
  }

  if (ic.preset == "heat_only") {
    // n = 0, u = 0, c = a (1 + sin x2): the c equation reduces to pure
    // diffusion, so max_c decays as a (1 + e^{-t}).
    RealField c = RealField::sample_scalar(grid, [a](auto x) { return a * (1.0 + std::sin(x[1])); });
    return detail::finish_state(SpectralField(grid, 1), to_spectral(c), SpectralField(grid, dim));
  }

  if (ic.preset == "taylor_green") {
    RealField n(grid, 1), c(grid, 1);
    RealField u = (dim == 2)
                      ? RealField::sample_vector(grid,
                                                 [a](int comp, auto x) {
                                                   return comp == 0
                                                              ? a * std::sin(x[0]) * std::cos(x[1])
                                                              : -a * std::cos(x[0]) * std::sin(x[1]);
                                                 })
                      : RealField::sample_vector(grid, [a](int comp, auto x) {
                          if (comp == 0) return a * std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
                          if (comp == 1) return -a * std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
                          return 0.0;
                        });
    return detail::finish_state(to_spectral(n), to_spectral(c), to_spectral(u));
  }

  if (ic.preset == "random_smooth") {
    if (a > 1.0) throw config_error("random_smooth: amplitude > 1 makes n, c dip below zero");
    SpectralField n = detail::scaled_to_sup(random_smooth_scalar(grid, ic.seed, 1, 1.0, ic.k0), a);
    SpectralField c = detail::scaled_to_sup(random_smooth_scalar(grid, ic.seed, 2, 1.0, ic.k0), a);
    SpectralField u = detail::scaled_to_sup(random_smooth_vector(grid, ic.seed, 3, 1.0, ic.k0), a);
    n.coef(0, g.flat_of_wavevector({0, 0, 0})) = 1.0;
    c.coef(0, g.flat_of_wavevector({0, 0, 0})) = 1.0;
    return detail::finish_state(std::move(n), std::move(c), std::move(u));
  }

  if (ic.preset == "near_homogeneous_bacteria") {
    // n = 1 + small smooth perturbation, c = 1, u = 0.
    if (a > 1.0) throw config_error("near_homogeneous_bacteria: amplitude > 1 makes n negative");
    SpectralField n = detail::scaled_to_sup(random_smooth_scalar(grid, ic.seed, 7, 1.0, ic.k0), a);
    n.coef(0, g.flat_of_wavevector({0, 0, 0})) = 1.0;
    SpectralField c(grid, 1);
    c.coef(0, g.flat_of_wavevector({0, 0, 0})) = 1.0;
    return detail::finish_state(std::move(n), std::move(c), SpectralField(grid, dim));
  }

  throw config_error("unknown initial-condition preset: " + ic.preset);
}

}  // namespace ctns
