#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctns/field.hpp"
#include "ctns/operators.hpp"

namespace ctns {

/// lambda_q = 2^q for q >= 0; the q = -1 block is weighted with 1 (on the
/// integer lattice it holds only the mean mode).
inline double lambda_q(int q) { return q < 0 ? 1.0 : std::ldexp(1.0, q); }

namespace detail {

inline double smooth_step(double a) {
  // h(a)/(h(a)+h(1-a)) with h(a) = exp(-1/a) for a > 0, else 0.
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  const double ha = std::exp(-1.0 / a);
  const double hb = std::exp(-1.0 / (1.0 - a));
  return ha / (ha + hb);
}

}  // namespace detail

/// Radial cutoff: 1 for t <= 3/4, 0 for t >= 1, C-infinity monotone bridge
/// in between (frozen profile, bit-reproducible).
inline double cutoff_chi(double t) {
  t = std::abs(t);
  if (t <= 0.75) return 1.0;
  if (t >= 1.0) return 0.0;
  return detail::smooth_step((1.0 - t) / 0.25);
}

/// phi(t) = chi(t/2) - chi(t); support (3/4, 2).
inline double cutoff_phi(double t) { return cutoff_chi(t / 2.0) - cutoff_chi(t); }

/// Littlewood-Paley multipliers phi_q evaluated on the lattice, tabulated
/// per distinct |k|^2 (the profiles are radial).
class DyadicBank {
 public:
  explicit DyadicBank(GridPtr grid) : grid_(std::move(grid)) {
    const double max_k = std::sqrt(static_cast<double>(grid_->max_k_squared()));
    q_max_ = static_cast<int>(std::ceil(std::log2(max_k)));
    const int nksq = grid_->max_k_squared() + 1;
    prof_.assign(static_cast<std::size_t>(q_max_ + 2), std::vector<double>(nksq, 0.0));
    for (int ksq = 0; ksq < nksq; ++ksq) {
      const double r = std::sqrt(static_cast<double>(ksq));
      prof_[0][ksq] = cutoff_chi(r);
      for (int q = 0; q <= q_max_; ++q) prof_[q + 1][ksq] = cutoff_phi(r / lambda_q(q));
    }
  }

  const GridPtr& grid_ptr() const { return grid_; }
  const TorusGrid& grid() const { return *grid_; }
  int q_max() const { return q_max_; }

  /// phi_q at the given |k|^2; q = -1 is the chi block.
  double multiplier(int q, int ksq) const { return prof_[static_cast<std::size_t>(q + 1)][ksq]; }

  double multiplier_at(int q, std::size_t flat) const {
    return multiplier(q, grid_->k_squared(flat));
  }

 private:
  GridPtr grid_;
  int q_max_;
  std::vector<std::vector<double>> prof_;
};

inline DyadicBank build_bank(GridPtr grid) { return DyadicBank(std::move(grid)); }

/// Delta_q F: multiply coefficients by phi_q.
inline SpectralField project_shell(const SpectralField& F, const DyadicBank& bank, int q) {
  if (q < -1 || q > bank.q_max()) throw std::invalid_argument("project_shell: q out of range");
  SpectralField out(F.grid_ptr(), F.components());
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c)
    for (std::size_t i = 0; i < g.points(); ++i)
      out.coef(c, i) = bank.multiplier(q, g.k_squared(i)) * F.coef(c, i);
  return out;
}

/// F_{<=Q} = sum of shells -1..min(Q, q_max); Q >= q_max returns F.
inline SpectralField project_low(const SpectralField& F, const DyadicBank& bank, int Q) {
  if (Q < -1) throw std::invalid_argument("project_low: Q must be >= -1");
  if (Q >= bank.q_max()) return F;
  SpectralField out(F.grid_ptr(), F.components());
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const int ksq = g.k_squared(i);
      double w = 0.0;
      for (int q = -1; q <= Q; ++q) w += bank.multiplier(q, ksq);
      out.coef(c, i) = w * F.coef(c, i);
    }
  }
  return out;
}

/// ||Delta_q F||_2 for all shells, via Parseval (no transforms).
inline std::vector<double> shell_l2_norms(const SpectralField& F, const DyadicBank& bank) {
  const TorusGrid& g = F.grid();
  std::vector<double> acc(static_cast<std::size_t>(bank.q_max() + 2), 0.0);
  for (int c = 0; c < F.components(); ++c) {
    for (std::size_t i = 0; i < g.points(); ++i) {
      const double m = std::norm(F.coef(c, i));
      if (m == 0.0) continue;
      const int ksq = g.k_squared(i);
      for (int q = -1; q <= bank.q_max(); ++q) {
        const double w = bank.multiplier(q, ksq);
        if (w != 0.0) acc[static_cast<std::size_t>(q + 1)] += w * w * m;
      }
    }
  }
  for (auto& v : acc) v = std::sqrt(v * g.domain_volume());
  return acc;
}

/// True when the shell has no spectral content (skips the transform).
inline bool shell_empty(const SpectralField& F, const DyadicBank& bank, int q) {
  const TorusGrid& g = F.grid();
  for (int c = 0; c < F.components(); ++c)
    for (std::size_t i = 0; i < g.points(); ++i)
      if (bank.multiplier(q, g.k_squared(i)) != 0.0 && F.coef(c, i) != std::complex<double>{})
        return false;
  return true;
}

/// ||Delta_q F||_p on the grid.
inline double shell_lp_norm(const SpectralField& F, const DyadicBank& bank, int q, double p) {
  if (shell_empty(F, bank, q)) return 0.0;
  return lp_norm(to_real(project_shell(F, bank, q)), p);
}

/// Besov norm B^s_{p,infinity}: sup over shells of lambda_q^s ||F_q||_p.
inline double besov_norm(const SpectralField& F, const DyadicBank& bank, double s, double p) {
  double sup = 0.0;
  for (int q = -1; q <= bank.q_max(); ++q) {
    const double v = shell_lp_norm(F, bank, q, p);
    if (v == 0.0) continue;
    sup = std::max(sup, std::pow(lambda_q(q), s) * v);
  }
  return sup;
}

/// Shell form of the H^s norm, (sum_q lambda_q^{2s} ||F_q||_2^2)^{1/2};
/// equivalent to the direct form up to absolute constants.
inline double shell_sobolev_norm(const SpectralField& F, const DyadicBank& bank, double s) {
  const auto shells = shell_l2_norms(F, bank);
  double acc = 0.0;
  for (int q = -1; q <= bank.q_max(); ++q) {
    const double v = shells[static_cast<std::size_t>(q + 1)];
    acc += std::pow(lambda_q(q), 2.0 * s) * v * v;
  }
  return std::sqrt(acc);
}

/// Bernstein ratio ||F_q||_r / (lambda_q^{n(1/s - 1/r)} ||F_q||_s) for
/// 1 <= s <= r <= inf; 0 on a degenerate shell.
inline double bernstein_ratio(const SpectralField& F, const DyadicBank& bank, int q, double s,
                              double r) {
  if (!(s >= 1.0) || !(r >= s)) throw std::invalid_argument("bernstein_ratio: need 1 <= s <= r");
  if (shell_empty(F, bank, q)) return 0.0;
  const RealField fq = to_real(project_shell(F, bank, q));
  const double ns = lp_norm(fq, s);
  if (ns == 0.0) return 0.0;
  const double nr = lp_norm(fq, r);
  const double inv_r = (r == inf) ? 0.0 : 1.0 / r;
  const double expo = F.grid().dim() * (1.0 / s - inv_r);
  return nr / (std::pow(lambda_q(q), expo) * ns);
}

struct ShellSpectrumRow {
  int q;
  double lambda;
  double l2;
  double linf;
  double lr;
};

/// Per-shell norms for export: (q, lambda_q, ||.||_2, ||.||_inf, ||.||_r).
inline std::vector<ShellSpectrumRow> shell_spectrum(const SpectralField& F, const DyadicBank& bank,
                                                    double r) {
  std::vector<ShellSpectrumRow> rows;
  const auto l2 = shell_l2_norms(F, bank);
  for (int q = -1; q <= bank.q_max(); ++q) {
    ShellSpectrumRow row;
    row.q = q;
    row.lambda = lambda_q(q);
    row.l2 = l2[static_cast<std::size_t>(q + 1)];
    if (shell_empty(F, bank, q)) {
      row.linf = 0.0;
      row.lr = 0.0;
    } else {
      const RealField fq = to_real(project_shell(F, bank, q));
      row.linf = lp_norm(fq, inf);
      row.lr = lp_norm(fq, r);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ctns
