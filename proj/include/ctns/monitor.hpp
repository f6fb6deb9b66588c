#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ctns/integrator.hpp"
#include "ctns/littlewood_paley.hpp"
#include "ctns/model.hpp"

namespace ctns {

/// Knobs of the dissipation-wavenumber definitions and the shell budget.
struct MonitorConfig {
  double C0 = 0.1;     // small constant in the wavenumber definitions
  double r = 3.2;      // Lebesgue exponent for the c-wavenumber
  double s = -0.1;     // Sobolev weight of the shell budget
  double eps = 0.0625; // epsilon fixing the admissible r-range; provenance only

  void validate() const {
    if (!(C0 > 0.0)) throw std::invalid_argument("MonitorConfig: C0 must be positive");
    if (!(r >= 1.0)) throw std::invalid_argument("MonitorConfig: r must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("MonitorConfig: eps must be in (0,1)");
  }

  /// Paper-compliant parameter ranges are advisory: violations run fine but
  /// land outside the regime the estimates were proved in.
  std::vector<std::string> range_warnings() const {
    std::vector<std::string> w;
    const double r_hi = 3.0 / (1.0 - eps);
    if (!(r > 3.0 && r <= r_hi + 1e-12))
      w.push_back("monitor.r = " + std::to_string(r) + " outside paper range (3, 3/(1-eps)) = (3, " +
                  std::to_string(r_hi) + ")");
    if (!(s > -0.5 && s < 0.0))
      w.push_back("monitor.s = " + std::to_string(s) + " outside (-1/2, 0)");
    if (!(r < 3.0 / (1.0 + s)))
      w.push_back("monitor.r = " + std::to_string(r) + " not below 3/(1+s) = " +
                  std::to_string(3.0 / (1.0 + s)));
    return w;
  }
};

/// Everything the monitor measures at one instant. Budget residuals couple
/// consecutive records; the first record of a series carries zeros there.
struct DiagnosticsRecord {
  double time = 0.0;
  double lambda_u = 1.0;
  int q_u = 0;
  double lambda_c = 1.0;
  int q_c = 0;
  double f_value = 0.0;
  double f_grad_c = 0.0;   // ||grad c_{<=Q_c}||_inf^2
  double f_besov_u = 0.0;  // ||u_{<=Q_u}||_{B^1_{inf,inf}}
  double f_integral = 0.0; // running trapezoid of f
  double term_I = 0.0, term_II = 0.0, term_III = 0.0;
  double term_IV = 0.0, term_V = 0.0, term_VI = 0.0;
  double diss_n = 0.0, diss_c = 0.0, diss_u = 0.0;
  double shell_energy_n = 0.0, shell_energy_c = 0.0, shell_energy_u = 0.0;
  double residual_n = 0.0, residual_c = 0.0, residual_u = 0.0;
  double mass_n = 0.0;
  double max_c = 0.0;
  double energy_u = 0.0;  // kinetic energy 1/2 ||u||_2^2
  double neg_n_frac = 0.0;
  double u_hs1 = 0.0;  // ||u||_{H^{s+1}} with the monitor's s
  double div_u_max = 0.0;
  bool separation_ok = true;
  std::vector<double> shell_l2_n, shell_l2_c, shell_l2_u;
};

namespace detail {

/// lambda_p^{-1} ||u_p||_inf for p = 1..q_max (index p-1).
inline std::vector<double> u_shell_indicators(const SpectralField& u, const DyadicBank& bank) {
  std::vector<double> a;
  for (int p = 1; p <= bank.q_max(); ++p)
    a.push_back(shell_lp_norm(u, bank, p, inf) / lambda_q(p));
  return a;
}

/// lambda_p^{3/r} ||c_p||_r for p = 1..q_max.
inline std::vector<double> c_shell_indicators(const SpectralField& c, const DyadicBank& bank,
                                              double r) {
  std::vector<double> a;
  for (int p = 1; p <= bank.q_max(); ++p)
    a.push_back(std::pow(lambda_q(p), 3.0 / r) * shell_lp_norm(c, bank, p, r));
  return a;
}

inline int floor_wavenumber(const std::vector<double>& indicators, double C0) {
  int q = 0;
  for (std::size_t i = 0; i < indicators.size(); ++i)
    if (indicators[i] >= C0) q = static_cast<int>(i) + 1;
  return q;
}

}  // namespace detail

/// Dissipation wavenumber of the velocity, Lambda_u = 2^{Q_u} with
///   Q_u = min{q >= 0 : lambda_p^{-1} ||u_p||_inf < C0 for all p > q},
/// floor convention Q_u = 0 when the condition holds above every shell.
inline std::pair<double, int> dissipation_wavenumber_u(const SpectralField& u,
                                                       const DyadicBank& bank,
                                                       const MonitorConfig& cfg) {
  const int q = detail::floor_wavenumber(detail::u_shell_indicators(u, bank), cfg.C0);
  return {lambda_q(q), q};
}

/// Dissipation wavenumber of the oxygen concentration, weight
/// lambda_p^{3/r} on shell L^r norms.
inline std::pair<double, int> dissipation_wavenumber_c(const SpectralField& c,
                                                       const DyadicBank& bank,
                                                       const MonitorConfig& cfg) {
  const int q = detail::floor_wavenumber(detail::c_shell_indicators(c, bank, cfg.r), cfg.C0);
  return {lambda_q(q), q};
}

struct CriterionValue {
  double total = 0.0;
  double grad_c_sq = 0.0;
  double besov_u = 0.0;
  int q_u = 0;
  int q_c = 0;
};

/// The low-mode functional
///   f(t) = ||grad c_{<=Q_c}||_inf^2 + ||u_{<=Q_u}||_{B^1_{inf,inf}}.
inline CriterionValue criterion_f(const State& s, const DyadicBank& bank,
                                  const MonitorConfig& cfg) {
  CriterionValue v;
  v.q_u = dissipation_wavenumber_u(s.u_hat(), bank, cfg).second;
  v.q_c = dissipation_wavenumber_c(s.c_hat(), bank, cfg).second;
  const SpectralField c_low = project_low(s.c_hat(), bank, v.q_c);
  const double g = lp_norm(to_real(gradient(c_low)), inf);
  v.grad_c_sq = g * g;
  const SpectralField u_low = project_low(s.u_hat(), bank, v.q_u);
  v.besov_u = besov_norm(u_low, bank, 1.0, inf);
  v.total = v.grad_c_sq + v.besov_u;
  return v;
}

struct FluxTerms {
  double I = 0.0, II = 0.0, III = 0.0, IV = 0.0, V = 0.0, VI = 0.0;
};

/// Shell-budget machinery: weighted spectral quadrature against the
/// Littlewood-Paley squares, with the weight sums
///   w_s(k) = sum_q lambda_q^{2s} phi_q(k)^2
/// tabulated per |k|^2.
class Monitor {
 public:
  Monitor(GridPtr grid, MonitorConfig cfg, ModelParams params)
      : bank_(grid), cfg_(cfg), params_(params) {
    cfg_.validate();
    const int nksq = grid->max_k_squared() + 1;
    w_low_.assign(nksq, 0.0);   // exponent 2s
    w_high_.assign(nksq, 0.0);  // exponent 2s+2
    for (int ksq = 0; ksq < nksq; ++ksq) {
      for (int q = -1; q <= bank_.q_max(); ++q) {
        const double phi = bank_.multiplier(q, ksq);
        if (phi == 0.0) continue;
        const double lam = lambda_q(q);
        w_low_[ksq] += std::pow(lam, 2.0 * cfg_.s) * phi * phi;
        w_high_[ksq] += std::pow(lam, 2.0 * cfg_.s + 2.0) * phi * phi;
      }
    }
  }

  const DyadicBank& bank() const { return bank_; }
  const MonitorConfig& config() const { return cfg_; }
  const ModelParams& params() const { return params_; }

  /// E_n, E_c, E_u: lambda^{2s}-weighted shell L^2 sums (2s+2 for c, u).
  std::array<double, 3> shell_energy(const State& s) const {
    return {weighted_energy(s.n_hat(), w_low_), weighted_energy(s.c_hat(), w_high_),
            weighted_energy(s.u_hat(), w_high_)};
  }

  /// D_n, D_c, D_u: same sums with an extra |k|^2 (shell gradients).
  std::array<double, 3> dissipation_terms(const State& s) const {
    return {weighted_dissipation(s.n_hat(), w_low_), weighted_dissipation(s.c_hat(), w_high_),
            weighted_dissipation(s.u_hat(), w_high_)};
  }

  /// The six labeled nonlinear flux terms, each formed from the dealiased
  /// physical-space product, shell-projected, and integrated against the
  /// matching shell of the solution by spectral quadrature.
  FluxTerms flux_terms(const State& s) const {
    const NonlinearProducts np = nonlinear_products(s, params_, true);
    FluxTerms t;
    t.I = -weighted_pairing(np.adv_u, s.u_hat(), w_high_);
    t.II = -weighted_pairing(np.adv_c, s.c_hat(), w_high_);
    t.III = -weighted_pairing(np.adv_n, s.n_hat(), w_low_);
    t.IV = -weighted_pairing(np.buoy, s.u_hat(), w_high_);
    t.V = -weighted_pairing(np.consume, s.c_hat(), w_high_);
    t.VI = -weighted_pairing(np.chemo, s.n_hat(), w_low_);
    return t;
  }

  DiagnosticsRecord record(const State& s, const DiagnosticsRecord* prev = nullptr) const {
    DiagnosticsRecord rec;
    rec.time = s.time();

    const auto ind_u = detail::u_shell_indicators(s.u_hat(), bank_);
    const auto ind_c = detail::c_shell_indicators(s.c_hat(), bank_, cfg_.r);
    rec.q_u = detail::floor_wavenumber(ind_u, cfg_.C0);
    rec.q_c = detail::floor_wavenumber(ind_c, cfg_.C0);
    rec.lambda_u = lambda_q(rec.q_u);
    rec.lambda_c = lambda_q(rec.q_c);
    rec.separation_ok = true;
    for (int p = rec.q_u + 1; p <= bank_.q_max(); ++p)
      if (!(ind_u[static_cast<std::size_t>(p - 1)] < cfg_.C0)) rec.separation_ok = false;
    for (int p = rec.q_c + 1; p <= bank_.q_max(); ++p)
      if (!(ind_c[static_cast<std::size_t>(p - 1)] < cfg_.C0)) rec.separation_ok = false;
    if (rec.q_u > 0 && !(ind_u[static_cast<std::size_t>(rec.q_u - 1)] >= cfg_.C0))
      rec.separation_ok = false;
    if (rec.q_c > 0 && !(ind_c[static_cast<std::size_t>(rec.q_c - 1)] >= cfg_.C0))
      rec.separation_ok = false;

    const SpectralField c_low = project_low(s.c_hat(), bank_, rec.q_c);
    const double gnorm = lp_norm(to_real(gradient(c_low)), inf);
    rec.f_grad_c = gnorm * gnorm;
    rec.f_besov_u = besov_norm(project_low(s.u_hat(), bank_, rec.q_u), bank_, 1.0, inf);
    rec.f_value = rec.f_grad_c + rec.f_besov_u;

    const FluxTerms ft = flux_terms(s);
    rec.term_I = ft.I;
    rec.term_II = ft.II;
    rec.term_III = ft.III;
    rec.term_IV = ft.IV;
    rec.term_V = ft.V;
    rec.term_VI = ft.VI;

    const auto diss = dissipation_terms(s);
    rec.diss_n = diss[0];
    rec.diss_c = diss[1];
    rec.diss_u = diss[2];
    const auto en = shell_energy(s);
    rec.shell_energy_n = en[0];
    rec.shell_energy_c = en[1];
    rec.shell_energy_u = en[2];

    rec.mass_n = s.n_hat().coef(0, s.grid().flat_of_wavevector({0, 0, 0})).real() *
                 s.grid().domain_volume();
    rec.max_c = 0.0;
    for (std::size_t i = 0; i < s.grid().points(); ++i)
      rec.max_c = std::max(rec.max_c, s.c().value(0, i));
    const double ul2 = l2_norm(s.u_hat());
    rec.energy_u = 0.5 * ul2 * ul2;
    std::size_t neg = 0;
    for (std::size_t i = 0; i < s.grid().points(); ++i)
      if (s.n().value(0, i) < 0.0) ++neg;
    rec.neg_n_frac = static_cast<double>(neg) / static_cast<double>(s.grid().points());
    rec.u_hs1 = sobolev_norm(s.u_hat(), cfg_.s + 1.0);
    rec.div_u_max = max_divergence(s.u_hat());

    rec.shell_l2_n = shell_l2_norms(s.n_hat(), bank_);
    rec.shell_l2_c = shell_l2_norms(s.c_hat(), bank_);
    rec.shell_l2_u = shell_l2_norms(s.u_hat(), bank_);

    if (prev) {
      const double h = rec.time - prev->time;
      if (h > 0.0) {
        auto mid = [&](double a, double b) { return 0.5 * (a + b); };
        rec.residual_n = 0.5 * (rec.shell_energy_n - prev->shell_energy_n) / h -
                         mid(-prev->diss_n + prev->term_III + prev->term_VI,
                             -rec.diss_n + rec.term_III + rec.term_VI);
        rec.residual_c = 0.5 * (rec.shell_energy_c - prev->shell_energy_c) / h -
                         mid(-prev->diss_c + prev->term_II + prev->term_V,
                             -rec.diss_c + rec.term_II + rec.term_V);
        // Buoyancy enters the u equation with + n grav while term IV carries
        // the labeling minus sign, so the identity pairs I with -IV.
        rec.residual_u = 0.5 * (rec.shell_energy_u - prev->shell_energy_u) / h -
                         mid(-prev->diss_u + prev->term_I - prev->term_IV,
                             -rec.diss_u + rec.term_I - rec.term_IV);
        rec.f_integral = prev->f_integral + 0.5 * h * (prev->f_value + rec.f_value);
      } else {
        rec.f_integral = prev->f_integral;
      }
    }
    return rec;
  }

 private:
  double weighted_energy(const SpectralField& F, const std::vector<double>& w) const {
    const TorusGrid& g = F.grid();
    double acc = 0.0;
    for (int c = 0; c < F.components(); ++c)
      for (std::size_t i = 0; i < g.points(); ++i)
        acc += w[static_cast<std::size_t>(g.k_squared(i))] * std::norm(F.coef(c, i));
    return acc * g.domain_volume();
  }

  double weighted_dissipation(const SpectralField& F, const std::vector<double>& w) const {
    const TorusGrid& g = F.grid();
    double acc = 0.0;
    for (int c = 0; c < F.components(); ++c)
      for (std::size_t i = 0; i < g.points(); ++i)
        acc += w[static_cast<std::size_t>(g.k_squared(i))] * g.k_squared(i) *
               std::norm(F.coef(c, i));
    return acc * g.domain_volume();
  }

  /// (2pi)^d sum_k w(k) Re[A(k) conj(B(k))] summed over components; equals
  /// sum_q lambda^{..} int Delta_q(A) B_q dx by Parseval.
  double weighted_pairing(const SpectralField& A, const SpectralField& B,
                          const std::vector<double>& w) const {
    const TorusGrid& g = A.grid();
    double acc = 0.0;
    for (int c = 0; c < A.components(); ++c)
      for (std::size_t i = 0; i < g.points(); ++i)
        acc += w[static_cast<std::size_t>(g.k_squared(i))] *
               (A.coef(c, i) * std::conj(B.coef(c, i))).real();
    return acc * g.domain_volume();
  }

  DyadicBank bank_;
  MonitorConfig cfg_;
  ModelParams params_;
  std::vector<double> w_low_, w_high_;
};

/// sum_q lambda_q^{2s+2} int (u_{<=q-2} . grad u_q) . u_q dx evaluated by
/// physical-space quadrature. Vanishes for divergence-free u (the
/// commutator cancellation behind the transport estimates); comparing the
/// direct flux term against the term with this subtracted makes the
/// cancellation observable.
inline double transport_commutator_defect(const SpectralField& u, const DyadicBank& bank,
                                          double s) {
  const TorusGrid& g = u.grid();
  const int dim = g.dim();
  double total = 0.0;
  for (int q = 1; q <= bank.q_max(); ++q) {
    if (shell_empty(u, bank, q)) continue;
    const SpectralField uq_hat = project_shell(u, bank, q);
    const RealField uq = to_real(uq_hat);
    const RealField ulow = to_real(project_low(u, bank, q - 2));
    double integral = 0.0;
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const RealField dj_uqi = to_real(derivative(component(uq_hat, i), j));
        for (std::size_t x = 0; x < g.points(); ++x)
          integral += ulow.value(j, x) * dj_uqi.value(0, x) * uq.value(i, x);
      }
    }
    total += std::pow(lambda_q(q), 2.0 * s + 2.0) * integral * g.cell_volume();
  }
  return total;
}

// ---- trajectory-level reports ----

struct CriterionIntegral {
  double integral = 0.0;
  double max_f = 0.0;
};

/// Trapezoidal time integral of f(t) over the record sequence.
inline CriterionIntegral criterion_integral(const std::vector<DiagnosticsRecord>& recs) {
  CriterionIntegral out;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    out.max_f = std::max(out.max_f, recs[i].f_value);
    if (i > 0)
      out.integral +=
          0.5 * (recs[i].time - recs[i - 1].time) * (recs[i].f_value + recs[i - 1].f_value);
  }
  return out;
}

struct LogBoundReport {
  double max_ratio = 0.0;
  double argmax_time = 0.0;
};

/// max_t Q_u / (1 + log2+ ||u||_{H^{s+1}}).
inline LogBoundReport wavenumber_log_bound(const std::vector<DiagnosticsRecord>& recs) {
  LogBoundReport rep;
  for (const auto& r : recs) {
    const double denom = 1.0 + std::max(0.0, std::log2(std::max(r.u_hs1, 1e-300)));
    const double ratio = static_cast<double>(r.q_u) / denom;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_time = r.time;
    }
  }
  return rep;
}

struct ConservationReport {
  double mass_initial = 0.0;
  double mass_max_drift = 0.0;        // max |mass(t) - mass(0)|
  double max_c_step_increase = 0.0;   // max over consecutive records
  double max_neg_n_fraction = 0.0;
  double max_div_u = 0.0;
  std::vector<double> kinetic_energy;
};

inline ConservationReport conservation_report(const std::vector<DiagnosticsRecord>& recs) {
  ConservationReport rep;
  if (recs.empty()) return rep;
  rep.mass_initial = recs.front().mass_n;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    rep.mass_max_drift = std::max(rep.mass_max_drift, std::abs(r.mass_n - rep.mass_initial));
    rep.max_neg_n_fraction = std::max(rep.max_neg_n_fraction, r.neg_n_frac);
    rep.max_div_u = std::max(rep.max_div_u, r.div_u_max);
    rep.kinetic_energy.push_back(r.energy_u);
    if (i > 0)
      rep.max_c_step_increase = std::max(rep.max_c_step_increase, r.max_c - recs[i - 1].max_c);
  }
  return rep;
}

/// Per-interval budget residual triples (n, c, u) recomputed from a record
/// sequence; identical to the residual_* fields when records are chained.
inline std::vector<std::array<double, 3>> budget_residuals(
    const std::vector<DiagnosticsRecord>& recs) {
  std::vector<std::array<double, 3>> out;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    const auto& a = recs[i - 1];
    const auto& b = recs[i];
    const double h = b.time - a.time;
    if (!(h > 0.0)) continue;
    auto mid = [](double x, double y) { return 0.5 * (x + y); };
    out.push_back({0.5 * (b.shell_energy_n - a.shell_energy_n) / h -
                       mid(-a.diss_n + a.term_III + a.term_VI, -b.diss_n + b.term_III + b.term_VI),
                   0.5 * (b.shell_energy_c - a.shell_energy_c) / h -
                       mid(-a.diss_c + a.term_II + a.term_V, -b.diss_c + b.term_II + b.term_V),
                   0.5 * (b.shell_energy_u - a.shell_energy_u) / h -
                       mid(-a.diss_u + a.term_I - a.term_IV, -b.diss_u + b.term_I - b.term_IV)});
  }
  return out;
}

}  // namespace ctns
