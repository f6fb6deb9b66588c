#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ctns/fft.hpp"
#include "ctns/grid.hpp"

namespace ctns {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct field_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar or vector field sampled on the grid; component-major storage.
class RealField {
 public:
  explicit RealField(GridPtr grid, int components = 1)
      : grid_(std::move(grid)), components_(components),
        values_(static_cast<std::size_t>(components) * grid_->points(), 0.0) {
    if (components_ != 1 && components_ != grid_->dim())
      throw std::invalid_argument("RealField: components must be 1 or dim");
  }

  const TorusGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int components() const { return components_; }
  std::size_t points() const { return grid_->points(); }

  double value(int comp, std::size_t flat) const {
    return values_[static_cast<std::size_t>(comp) * points() + flat];
  }
  double& value(int comp, std::size_t flat) {
    return values_[static_cast<std::size_t>(comp) * points() + flat];
  }

  const std::vector<double>& data() const { return values_; }
  std::vector<double>& data() { return values_; }

  template <class F>
  static RealField sample_scalar(GridPtr grid, F&& f) {
    RealField out(std::move(grid), 1);
    for (std::size_t i = 0; i < out.points(); ++i) out.value(0, i) = f(out.grid().coords(i));
    return out;
  }

  /// f(component, coords) -> value
  template <class F>
  static RealField sample_vector(GridPtr grid, F&& f) {
    const int dim = grid->dim();
    RealField out(std::move(grid), dim);
    for (int c = 0; c < dim; ++c)
      for (std::size_t i = 0; i < out.points(); ++i) out.value(c, i) = f(c, out.grid().coords(i));
    return out;
  }

  bool all_finite() const {
    for (double v : values_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  GridPtr grid_;
  int components_;
  std::vector<double> values_;
};

/// Fourier-side twin of RealField: coef(k) is the coefficient of e^{i k.x},
/// indexed by the grid's folded wavevector lattice.
class SpectralField {
 public:
  explicit SpectralField(GridPtr grid, int components = 1)
      : grid_(std::move(grid)), components_(components),
        coef_(static_cast<std::size_t>(components) * grid_->points(), {0.0, 0.0}) {
    if (components_ != 1 && components_ != grid_->dim())
      throw std::invalid_argument("SpectralField: components must be 1 or dim");
  }

  const TorusGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int components() const { return components_; }
  std::size_t points() const { return grid_->points(); }

  std::complex<double> coef(int comp, std::size_t flat) const {
    return coef_[static_cast<std::size_t>(comp) * points() + flat];
  }
  std::complex<double>& coef(int comp, std::size_t flat) {
    return coef_[static_cast<std::size_t>(comp) * points() + flat];
  }

  const std::vector<std::complex<double>>& data() const { return coef_; }
  std::vector<std::complex<double>>& data() { return coef_; }

  bool all_finite() const {
    for (const auto& z : coef_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& z : coef_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  GridPtr grid_;
  int components_;
  std::vector<std::complex<double>> coef_;
};

inline SpectralField to_spectral(const RealField& f) {
  SpectralField out(f.grid_ptr(), f.components());
  const std::size_t count = f.points();
  const double scale = 1.0 / static_cast<double>(count);
  std::vector<std::complex<double>> buf(count);
  for (int c = 0; c < f.components(); ++c) {
    for (std::size_t i = 0; i < count; ++i) buf[i] = f.value(c, i);
    detail::fft_forward(f.grid(), buf.data());
    for (std::size_t i = 0; i < count; ++i) out.coef(c, i) = buf[i] * scale;
  }
  return out;
}

inline RealField to_real(const SpectralField& F) {
  RealField out(F.grid_ptr(), F.components());
  const std::size_t count = F.points();
  std::vector<std::complex<double>> buf(count);
  for (int c = 0; c < F.components(); ++c) {
    for (std::size_t i = 0; i < count; ++i) buf[i] = F.coef(c, i);
    detail::fft_backward(F.grid(), buf.data());
    for (std::size_t i = 0; i < count; ++i) out.value(c, i) = buf[i].real();
  }
  if (!out.all_finite()) throw field_error("to_real: non-finite values");
  return out;
}

// ---- pointwise arithmetic (spectral fields are the workhorses) ----

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  SpectralField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  SpectralField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

inline SpectralField operator*(double s, const SpectralField& a) {
  SpectralField out = a;
  for (auto& z : out.data()) z *= s;
  return out;
}

inline RealField operator+(const RealField& a, const RealField& b) {
  RealField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

inline RealField operator-(const RealField& a, const RealField& b) {
  RealField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

inline RealField operator*(double s, const RealField& a) {
  RealField out = a;
  for (auto& v : out.data()) v *= s;
  return out;
}

/// Pointwise magnitude: |f| for a scalar field, Euclidean length for a vector.
inline double magnitude_at(const RealField& f, std::size_t flat) {
  if (f.components() == 1) return std::abs(f.value(0, flat));
  double s = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double v = f.value(c, flat);
    s += v * v;
  }
  return std::sqrt(s);
}

// ---- norms ----

/// Discrete quadrature of the continuum L^p norm on [0,2pi)^dim;
/// p = inf is the grid maximum of the pointwise magnitude.
inline double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  if (p == inf) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.points(); ++i) m = std::max(m, magnitude_at(f, i));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double v : f.data()) acc += v * v;
    return std::sqrt(acc * f.grid().cell_volume());
  }
  for (std::size_t i = 0; i < f.points(); ++i) acc += std::pow(magnitude_at(f, i), p);
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

/// L^2 norm straight from coefficients (Parseval).
inline double l2_norm(const SpectralField& F) {
  double acc = 0.0;
  for (const auto& z : F.data()) acc += std::norm(z);
  return std::sqrt(acc * F.grid().domain_volume());
}

/// H^s norm, direct form: sum |k|^{2s} |coef|^2 over k != 0 plus the k = 0
/// mode with weight one (s-independent handling of the mean).
inline double sobolev_norm(const SpectralField& F, double s) {
  const TorusGrid& g = F.grid();
  double acc = 0.0;
  for (int c = 0; c < F.components(); ++c) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const int ksq = g.k_squared(i);
      const double w = (ksq == 0) ? 1.0 : std::pow(static_cast<double>(ksq), s);
      acc += w * std::norm(F.coef(c, i));
    }
  }
  return std::sqrt(acc * g.domain_volume());
}

}  // namespace ctns
