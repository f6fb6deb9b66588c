#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "ctns/field.hpp"
#include "ctns/operators.hpp"

namespace ctns {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mode_key(std::uint64_t seed, int kx, int ky, int kz, int comp,
                              std::uint64_t salt) {
  std::uint64_t h = splitmix64(seed ^ (salt * 0xA24BAED4963EE407ULL));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(kx) + (1 << 20)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(ky) + (1 << 20)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(kz) + (1 << 20)));
  h = splitmix64(h ^ static_cast<std::uint64_t>(comp + 7));
  return h;
}

inline double uniform01(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

/// Standard complex Gaussian keyed by (seed, wavevector, component, salt).
/// Keying by the wavevector itself makes draws identical across grid sizes,
/// so cross-resolution comparisons see the same spectral content.
inline std::complex<double> mode_gaussian(std::uint64_t seed, int kx, int ky, int kz, int comp,
                                          std::uint64_t salt) {
  const std::uint64_t h1 = mode_key(seed, kx, ky, kz, comp, salt);
  const std::uint64_t h2 = splitmix64(h1 ^ 0xD6E8FEB86659FD93ULL);
  const double u1 = uniform01(h1);
  const double u2 = uniform01(h2);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

/// True on exactly one of each +-k pair (and false at k = 0).
inline bool canonical_halfspace(int kx, int ky, int kz) {
  if (kz != 0) return kz > 0;
  if (ky != 0) return ky > 0;
  return kx > 0;
}

}  // namespace detail

/// Zero-mean random real scalar field with coefficient amplitude profile
/// sigma(|k|^2); conjugate symmetry enforced by construction. Populates
/// only |k_i| <= max_abs_k (pass the dealias cutoff for simulation data).
template <class Sigma>
SpectralField random_scalar_spectrum(GridPtr grid, std::uint64_t seed, std::uint64_t salt,
                                     int max_abs_k, Sigma&& sigma) {
  SpectralField out(grid, 1);
  const TorusGrid& g = *grid;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const auto k = g.wavevector(i);
    if (k[0] == 0 && k[1] == 0 && k[2] == 0) continue;
    bool inside = true;
    for (int d = 0; d < g.dim(); ++d) inside = inside && std::abs(k[d]) <= max_abs_k;
    if (!inside) continue;
    if (!detail::canonical_halfspace(k[0], k[1], k[2])) continue;
    const double amp = sigma(static_cast<double>(g.k_squared(i)));
    if (amp == 0.0) continue;
    const auto z = amp * detail::mode_gaussian(seed, k[0], k[1], k[2], 0, salt);
    out.coef(0, i) = z;
    out.coef(0, g.flat_of_wavevector({-k[0], -k[1], -k[2]})) = std::conj(z);
  }
  return out;
}

/// Smooth random scalar: Gaussian spectral decay exp(-(|k|/k0)^2).
inline SpectralField random_smooth_scalar(GridPtr grid, std::uint64_t seed, std::uint64_t salt,
                                          double amplitude, double k0) {
  const int cutoff = grid->dealias_cutoff();
  return random_scalar_spectrum(grid, seed, salt, cutoff, [amplitude, k0](double ksq) {
    return amplitude * std::exp(-ksq / (k0 * k0));
  });
}

/// Smooth random divergence-free vector field.
inline SpectralField random_smooth_vector(GridPtr grid, std::uint64_t seed, std::uint64_t salt,
                                          double amplitude, double k0) {
  SpectralField out(grid, grid->dim());
  for (int c = 0; c < grid->dim(); ++c) {
    SpectralField comp = random_smooth_scalar(grid, seed, salt + 101 * (c + 1), amplitude, k0);
    for (std::size_t i = 0; i < grid->points(); ++i) out.coef(c, i) = comp.coef(0, i);
  }
  return leray_project(out);
}

/// Random field supported on the lattice annulus of dyadic shell q
/// (3 * 2^{q-2} < |k| < 2^{q+1}), unit-variance coefficients.
inline SpectralField random_shell_field(GridPtr grid, std::uint64_t seed, std::uint64_t salt,
                                        int q) {
  const double lo = 3.0 * std::ldexp(1.0, q - 2);
  const double hi = std::ldexp(1.0, q + 1);
  const int half = grid->n() / 2 - 1;  // keep clear of the Nyquist line
  return random_scalar_spectrum(grid, seed, salt, half, [lo, hi](double ksq) {
    const double r = std::sqrt(ksq);
    return (r > lo && r < hi) ? 1.0 : 0.0;
  });
}

}  // namespace ctns
