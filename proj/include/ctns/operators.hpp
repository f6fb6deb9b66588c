#pragma once

#include <complex>
#include <stdexcept>

#include "ctns/field.hpp"

namespace ctns {

/// d/dx_axis, i.e. multiplication by i k_axis.
inline SpectralField derivative(const SpectralField& F, int axis) {
  if (axis < 0 || axis >= F.grid().dim()) throw std::invalid_argument("derivative: bad axis");
  SpectralField out(F.grid_ptr(), F.components());
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const double k = static_cast<double>(g.wavevector(i)[axis]);
      out.coef(c, i) = std::complex<double>(0.0, k) * F.coef(c, i);
    }
  }
  return out;
}

/// Gradient of a scalar -> vector field.
inline SpectralField gradient(const SpectralField& F) {
  if (F.components() != 1) throw std::invalid_argument("gradient: scalar input expected");
  const TorusGrid& g = F.grid();
  SpectralField out(F.grid_ptr(), g.dim());
  for (int d = 0; d < g.dim(); ++d) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const double k = static_cast<double>(g.wavevector(i)[d]);
      out.coef(d, i) = std::complex<double>(0.0, k) * F.coef(0, i);
    }
  }
  return out;
}

/// Divergence of a vector -> scalar field.
inline SpectralField divergence(const SpectralField& U) {
  const TorusGrid& g = U.grid();
  if (U.components() != g.dim()) throw std::invalid_argument("divergence: vector input expected");
  SpectralField out(U.grid_ptr(), 1);
  for (std::size_t i = 0; i < g.points(); ++i) {
    const auto k = g.wavevector(i);
    std::complex<double> acc{0.0, 0.0};
    for (int d = 0; d < g.dim(); ++d) acc += std::complex<double>(0.0, k[d]) * U.coef(d, i);
    out.coef(0, i) = acc;
  }
  return out;
}

inline SpectralField laplacian(const SpectralField& F) {
  SpectralField out(F.grid_ptr(), F.components());
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c)
    for (std::size_t i = 0; i < g.points(); ++i)
      out.coef(c, i) = -static_cast<double>(g.k_squared(i)) * F.coef(c, i);
  return out;
}

/// Leray projector onto divergence-free fields: coef - k (k.coef)/|k|^2,
/// k = 0 passed through. Idempotent; annihilates gradients.
inline SpectralField leray_project(const SpectralField& U) {
  const TorusGrid& g = U.grid();
  if (U.components() != g.dim()) throw std::invalid_argument("leray_project: vector input expected");
  SpectralField out = U;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const int ksq = g.k_squared(i);
    if (ksq == 0) continue;
    const auto k = g.wavevector(i);
    std::complex<double> kdot{0.0, 0.0};
    for (int d = 0; d < g.dim(); ++d) kdot += static_cast<double>(k[d]) * out.coef(d, i);
    kdot /= static_cast<double>(ksq);
    for (int d = 0; d < g.dim(); ++d) out.coef(d, i) -= static_cast<double>(k[d]) * kdot;
  }
  return out;
}

/// Largest |k . u_hat(k)| over the lattice.
inline double max_divergence(const SpectralField& U) {
  const TorusGrid& g = U.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    const auto k = g.wavevector(i);
    std::complex<double> kdot{0.0, 0.0};
    for (int d = 0; d < g.dim(); ++d) kdot += static_cast<double>(k[d]) * U.coef(d, i);
    m = std::max(m, std::abs(kdot));
  }
  return m;
}

/// Zero coefficients outside the 2/3-rule mask.
inline SpectralField dealias(const SpectralField& F) {
  SpectralField out = F;
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c)
    for (std::size_t i = 0; i < g.points(); ++i)
      if (!g.dealias_keep(i)) out.coef(c, i) = {0.0, 0.0};
  return out;
}

inline RealField component(const RealField& f, int c) {
  RealField out(f.grid_ptr(), 1);
  for (std::size_t i = 0; i < f.points(); ++i) out.value(0, i) = f.value(c, i);
  return out;
}

inline SpectralField component(const SpectralField& F, int c) {
  SpectralField out(F.grid_ptr(), 1);
  for (std::size_t i = 0; i < F.points(); ++i) out.coef(0, i) = F.coef(c, i);
  return out;
}

/// Pointwise product of two scalar fields.
inline RealField multiply(const RealField& a, const RealField& b) {
  if (a.components() != 1 || b.components() != 1)
    throw std::invalid_argument("multiply: scalar fields expected");
  RealField out(a.grid_ptr(), 1);
  for (std::size_t i = 0; i < a.points(); ++i) out.value(0, i) = a.value(0, i) * b.value(0, i);
  return out;
}

/// Transform of a pointwise product with the 2/3-rule applied.
inline SpectralField dealiased_product(const RealField& a, const RealField& b) {
  return dealias(to_spectral(multiply(a, b)));
}

}  // namespace ctns
