#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ctns/field.hpp"
#include "ctns/operators.hpp"

namespace ctns {

/// Model constants of the simplified system: constant chemotactic
/// sensitivity, constant gravitational pull, consumption f(c) = c,
/// unit viscosity and diffusivities.
struct ModelParams {
  double chi = 1.0;
  std::array<double, 3> grav{0.0, -1.0, 0.0};

  /// Buoyancy pointing down the last axis.
  static ModelParams defaults(int dim) {
    ModelParams p;
    p.grav = {0.0, 0.0, 0.0};
    p.grav[dim - 1] = -1.0;
    return p;
  }
};

/// Solution triple (n, c, u) at one instant. Spectral and physical
/// representations are kept in sync at construction; the object is
/// immutable afterwards.
class State {
 public:
  State(double time, SpectralField n_hat, SpectralField c_hat, SpectralField u_hat)
      : time_(time), n_hat_(std::move(n_hat)), c_hat_(std::move(c_hat)), u_hat_(std::move(u_hat)),
        n_(to_real(n_hat_)), c_(to_real(c_hat_)), u_(to_real(u_hat_)) {
    validate();
  }

  /// Build from physical-space samples (checkpoint loads); keeps the given
  /// real values bit-exact and derives the spectra.
  State(double time, RealField n, RealField c, RealField u)
      : time_(time), n_hat_(to_spectral(n)), c_hat_(to_spectral(c)), u_hat_(to_spectral(u)),
        n_(std::move(n)), c_(std::move(c)), u_(std::move(u)) {
    validate();
  }

  double time() const { return time_; }
  const TorusGrid& grid() const { return n_hat_.grid(); }
  const GridPtr& grid_ptr() const { return n_hat_.grid_ptr(); }

  const SpectralField& n_hat() const { return n_hat_; }
  const SpectralField& c_hat() const { return c_hat_; }
  const SpectralField& u_hat() const { return u_hat_; }
  const RealField& n() const { return n_; }
  const RealField& c() const { return c_; }
  const RealField& u() const { return u_; }

  static State zero(GridPtr grid, double time = 0.0) {
    return State(time, SpectralField(grid, 1), SpectralField(grid, 1),
                 SpectralField(grid, grid->dim()));
  }

 private:
  void validate() const {
    const TorusGrid& g = n_hat_.grid();
    if (n_hat_.components() != 1 || c_hat_.components() != 1 || u_hat_.components() != g.dim())
      throw std::invalid_argument("State: component mismatch");
    if (c_hat_.grid_ptr() != n_hat_.grid_ptr() || u_hat_.grid_ptr() != n_hat_.grid_ptr())
      throw std::invalid_argument("State: fields on different grids");
    if (!n_hat_.all_finite() || !c_hat_.all_finite() || !u_hat_.all_finite())
      throw field_error("State: non-finite field");
    // Divergence tolerance scales with the spectral amplitude so that the
    // check stays meaningful for large fields.
    const double scale = std::max(1.0, u_hat_.max_abs() * std::sqrt(double(g.max_k_squared())));
    if (max_divergence(u_hat_) > 1e-10 * scale)
      throw std::invalid_argument("State: velocity is not divergence-free");
  }

  double time_;
  SpectralField n_hat_, c_hat_, u_hat_;
  RealField n_, c_, u_;
};

struct Tendency {
  SpectralField n;
  SpectralField c;
  SpectralField u;
};

/// Dealiased spectral products shared by the integrator and the shell-flux
/// diagnostics (the budget identities hold only because both sides use the
/// same truncation).
struct NonlinearProducts {
  SpectralField adv_n;    // (div(u n))^
  SpectralField adv_c;    // (div(u c))^
  SpectralField adv_u;    // (div(u (x) u))^, vector
  SpectralField chemo;    // (div(chi n grad c))^
  SpectralField consume;  // (n c)^
  SpectralField buoy;     // (n grav)^, vector; linear, never aliased
};

inline NonlinearProducts nonlinear_products(const State& s, const ModelParams& p,
                                            bool dealias_products = true) {
  const GridPtr grid = s.grid_ptr();
  const TorusGrid& g = *grid;
  const int dim = g.dim();

  auto maybe_dealias = [&](SpectralField f) { return dealias_products ? dealias(f) : f; };

  std::vector<RealField> u_comp;
  u_comp.reserve(dim);
  for (int d = 0; d < dim; ++d) u_comp.push_back(component(s.u(), d));

  auto div_of_flux = [&](const std::vector<SpectralField>& flux) {
    SpectralField out(grid, 1);
    for (int d = 0; d < dim; ++d) {
      for (std::size_t i = 0; i < g.points(); ++i) {
        const double k = static_cast<double>(g.wavevector(i)[d]);
        out.coef(0, i) += std::complex<double>(0.0, k) * flux[d].coef(0, i);
      }
    }
    return out;
  };

  // u . grad n = div(u n) since div u = 0; same for c.
  std::vector<SpectralField> flux_n, flux_c;
  for (int d = 0; d < dim; ++d) {
    flux_n.push_back(maybe_dealias(to_spectral(multiply(u_comp[d], s.n()))));
    flux_c.push_back(maybe_dealias(to_spectral(multiply(u_comp[d], s.c()))));
  }
  SpectralField adv_n = div_of_flux(flux_n);
  SpectralField adv_c = div_of_flux(flux_c);

  // (u . grad) u = div(u (x) u); the tensor is symmetric.
  std::vector<std::vector<SpectralField>> uu(dim);
  for (int i = 0; i < dim; ++i) {
    uu[i].reserve(dim);
    for (int j = 0; j <= i; ++j)
      uu[i].push_back(maybe_dealias(to_spectral(multiply(u_comp[i], u_comp[j]))));
  }
  auto uu_at = [&](int i, int j) -> const SpectralField& {
    return (j <= i) ? uu[i][j] : uu[j][i];
  };
  SpectralField adv_u(grid, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const SpectralField& t = uu_at(i, j);
      for (std::size_t f = 0; f < g.points(); ++f) {
        const double k = static_cast<double>(g.wavevector(f)[j]);
        adv_u.coef(i, f) += std::complex<double>(0.0, k) * t.coef(0, f);
      }
    }
  }

  // div(chi n grad c)
  std::vector<SpectralField> chem_flux;
  for (int d = 0; d < dim; ++d) {
    const RealField dc = to_real(derivative(s.c_hat(), d));
    chem_flux.push_back(maybe_dealias(to_spectral(multiply(s.n(), dc))));
  }
  SpectralField chemo = p.chi * div_of_flux(chem_flux);

  SpectralField consume = maybe_dealias(to_spectral(multiply(s.n(), s.c())));

  SpectralField buoy(grid, dim);
  for (int d = 0; d < dim; ++d)
    for (std::size_t i = 0; i < g.points(); ++i) buoy.coef(d, i) = p.grav[d] * s.n_hat().coef(0, i);

  return {std::move(adv_n), std::move(adv_c), std::move(adv_u),
          std::move(chemo), std::move(consume), std::move(buoy)};
}

/// Non-stiff part of the tendency (everything but the Laplacians), with the
/// velocity part Leray-projected. This is what the explicit stages of the
/// integrator advance.
inline Tendency nonlinear_tendency(const State& s, const ModelParams& p,
                                   bool dealias_products = true) {
  NonlinearProducts np = nonlinear_products(s, p, dealias_products);
  Tendency t{SpectralField(s.grid_ptr(), 1), SpectralField(s.grid_ptr(), 1),
             SpectralField(s.grid_ptr(), s.grid().dim())};
  t.n = (-1.0) * np.adv_n - np.chemo;
  t.c = (-1.0) * np.adv_c - np.consume;
  t.u = leray_project(np.buoy - np.adv_u);
  return t;
}

/// Full right-hand side of the system:
///   n_t = Lap n - u.grad n - chi div(n grad c)
///   c_t = Lap c - u.grad c - n c
///   u_t = P[Lap u - (u.grad)u + n grav]
inline Tendency rhs(const State& s, const ModelParams& p) {
  Tendency t = nonlinear_tendency(s, p);
  t.n = t.n + laplacian(s.n_hat());
  t.c = t.c + laplacian(s.c_hat());
  t.u = t.u + laplacian(s.u_hat());
  return t;
}

}  // namespace ctns
