#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace ctns {

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

/// Periodic lattice on [0, 2pi)^dim with integer wavevectors.
///
/// Points per axis is a power of two so that transforms are fast and the
/// dyadic shells of the Littlewood-Paley bank align with |k| directly.
/// Wavevectors are folded into {-N/2+1, ..., N/2}. The dealias mask keeps
/// modes with |k_i| <= floor(N/3) on every axis (2/3 rule; all
/// nonlinearities in the model are quadratic).
class TorusGrid {
 public:
  TorusGrid(int dim, int n_per_axis) : dim_(dim), n_(n_per_axis) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("TorusGrid: dim must be 2 or 3");
    if (n_per_axis < 8 || (n_per_axis & (n_per_axis - 1)) != 0)
      throw std::invalid_argument("TorusGrid: points per axis must be a power of two >= 8");

    points_ = 1;
    for (int d = 0; d < dim_; ++d) points_ *= static_cast<std::size_t>(n_);
    cutoff_ = n_ / 3;

    kval_.resize(n_);
    for (int i = 0; i < n_; ++i) kval_[i] = (i <= n_ / 2) ? i : i - n_;

    ksq_.resize(points_);
    dealias_.resize(points_);
    for (std::size_t f = 0; f < points_; ++f) {
      const auto k = wavevector(f);
      ksq_[f] = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
      bool keep = true;
      for (int d = 0; d < dim_; ++d) keep = keep && std::abs(k[d]) <= cutoff_;
      dealias_[f] = keep ? 1 : 0;
    }
  }

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t points() const { return points_; }
  int dealias_cutoff() const { return cutoff_; }
  double spacing() const { return two_pi / n_; }
  double cell_volume() const { return std::pow(spacing(), dim_); }
  double domain_volume() const { return std::pow(two_pi, dim_); }

  /// Folded wavevector component for a raw axis index in [0, N).
  int k_of_index(int axis_index) const { return kval_[axis_index]; }

  /// Raw axis index holding wavevector component k in {-N/2+1, ..., N/2}.
  int index_of_k(int k) const { return k >= 0 ? k : k + n_; }

  std::array<int, 3> axis_indices(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    if (dim_ == 2) {
      idx[1] = static_cast<int>(flat % n_);
      idx[0] = static_cast<int>(flat / n_);
    } else {
      idx[2] = static_cast<int>(flat % n_);
      flat /= n_;
      idx[1] = static_cast<int>(flat % n_);
      idx[0] = static_cast<int>(flat / n_);
    }
    return idx;
  }

  std::array<int, 3> wavevector(std::size_t flat) const {
    auto idx = axis_indices(flat);
    std::array<int, 3> k{0, 0, 0};
    for (int d = 0; d < dim_; ++d) k[d] = kval_[idx[d]];
    return k;
  }

  std::size_t flat_index(const std::array<int, 3>& axis_idx) const {
    std::size_t f = static_cast<std::size_t>(axis_idx[0]);
    for (int d = 1; d < dim_; ++d) f = f * n_ + static_cast<std::size_t>(axis_idx[d]);
    return f;
  }

  /// Flat index of the mode with wavevector k (components folded).
  std::size_t flat_of_wavevector(const std::array<int, 3>& k) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = 0; d < dim_; ++d) idx[d] = index_of_k(k[d]);
    return flat_index(idx);
  }

  /// Physical coordinates of a grid point.
  std::array<double, 3> coords(std::size_t flat) const {
    auto idx = axis_indices(flat);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim_; ++d) x[d] = spacing() * idx[d];
    return x;
  }

  int k_squared(std::size_t flat) const { return ksq_[flat]; }
  int max_k_squared() const { return dim_ * (n_ / 2) * (n_ / 2); }
  bool dealias_keep(std::size_t flat) const { return dealias_[flat] != 0; }

 private:
  int dim_;
  int n_;
  int cutoff_;
  std::size_t points_;
  std::vector<int> kval_;
  std::vector<int> ksq_;
  std::vector<std::uint8_t> dealias_;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

inline GridPtr make_grid(int dim, int n_per_axis) {
  return std::make_shared<const TorusGrid>(dim, n_per_axis);
}

}  // namespace ctns
