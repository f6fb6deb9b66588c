#pragma once

#include <cmath>
#include <stdexcept>

#include "ctns/model.hpp"

namespace ctns {

struct ScaleResult {
  State state;
  /// Set when relabeled modes fell outside the retained (dealiased) lattice
  /// and were dropped.
  bool information_loss = false;
};

/// Natural scaling of the system on the fixed torus:
///   n' = lam^2 n(lam x), c' = c(lam x), u' = lam u(lam x),
/// applied to a state at time tau; the result carries time tau / lam^2.
/// Spatial rescaling is the wavevector relabeling k -> lam k, so lam must
/// be 2^m with integer m >= 0 for the image to stay on the integer lattice;
/// relabeled modes beyond the dealias cutoff are dropped and flagged.
inline ScaleResult scale_transform(const State& s, double lam) {
  const int m = static_cast<int>(std::lround(std::log2(lam)));
  if (m < 0 || std::ldexp(1.0, m) != lam)
    throw std::invalid_argument("scale_transform: lam must be 2^m with integer m >= 0");
  if (m == 0) return {s, false};

  const GridPtr grid = s.grid_ptr();
  const TorusGrid& g = *grid;
  const int factor = 1 << m;

  SpectralField n_out(grid, 1), c_out(grid, 1), u_out(grid, g.dim());
  bool loss = false;
  // Coefficients at transform-roundoff level do not count as lost content.
  const double content_floor =
      1e-13 * std::max({s.n_hat().max_abs(), s.c_hat().max_abs(), s.u_hat().max_abs(), 1e-300});

  for (std::size_t i = 0; i < g.points(); ++i) {
    const auto k = g.wavevector(i);
    std::array<int, 3> kk{k[0] * factor, k[1] * factor, k[2] * factor};
    bool keep = true;
    bool had_content = false;
    for (int d = 0; d < g.dim(); ++d) keep = keep && std::abs(kk[d]) <= g.dealias_cutoff();
    if (std::abs(s.n_hat().coef(0, i)) > content_floor ||
        std::abs(s.c_hat().coef(0, i)) > content_floor)
      had_content = true;
    for (int d = 0; d < g.dim() && !had_content; ++d)
      if (std::abs(s.u_hat().coef(d, i)) > content_floor) had_content = true;
    if (!keep) {
      if (had_content) loss = true;
      continue;
    }
    const std::size_t j = g.flat_of_wavevector(kk);
    n_out.coef(0, j) = static_cast<double>(factor) * static_cast<double>(factor) *
                       s.n_hat().coef(0, i);
    c_out.coef(0, j) = s.c_hat().coef(0, i);
    for (int d = 0; d < g.dim(); ++d)
      u_out.coef(d, j) = static_cast<double>(factor) * s.u_hat().coef(d, i);
  }

  const double lam2 = static_cast<double>(factor) * static_cast<double>(factor);
  return {State(s.time() / lam2, std::move(n_out), std::move(c_out), std::move(u_out)), loss};
}

}  // namespace ctns
