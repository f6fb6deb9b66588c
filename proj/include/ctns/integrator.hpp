#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctns/model.hpp"

namespace ctns {

/// Raised when a step produces non-finite values.
struct blow_up_error : std::runtime_error {
  explicit blow_up_error(double t)
      : std::runtime_error("solution blew up at t = " + std::to_string(t)), time(t) {}
  double time;
};

struct StepOptions {
  bool dealias_products = true;   // debug switch; diagnostics always dealias
  double cfl_warn_threshold = 0.5;
};

struct StepInfo {
  double cfl = 0.0;
  bool cfl_warning = false;
};

/// Integrating-factor Heun step: the Laplacian is integrated exactly per
/// mode (multiplication by e^{-|k|^2 dt}), the remaining terms with an
/// explicit second-order Runge-Kutta stage pair. The velocity is
/// re-projected after each stage.
class ImexStepper {
 public:
  ImexStepper(GridPtr grid, double dt) : grid_(std::move(grid)), dt_(dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("ImexStepper: dt must be positive");
    const int nksq = grid_->max_k_squared() + 1;
    efactor_.resize(nksq);
    for (int ksq = 0; ksq < nksq; ++ksq) efactor_[ksq] = std::exp(-static_cast<double>(ksq) * dt);
  }

  double dt() const { return dt_; }

  State step(const State& s, const ModelParams& p, const StepOptions& opts = {},
             StepInfo* info = nullptr) const {
    const TorusGrid& g = *grid_;
    const double t_new = s.time() + dt_;

    if (info) {
      const double umax = lp_norm(s.u(), inf);
      info->cfl = dt_ * umax * g.n() / two_pi;
      info->cfl_warning = info->cfl > opts.cfl_warn_threshold;
    }

    const Tendency k1 = nonlinear_tendency(s, p, opts.dealias_products);

    SpectralField n_star = scale_modes(axpy(s.n_hat(), dt_, k1.n));
    SpectralField c_star = scale_modes(axpy(s.c_hat(), dt_, k1.c));
    SpectralField u_star = leray_project(scale_modes(axpy(s.u_hat(), dt_, k1.u)));
    check_finite(n_star, c_star, u_star, t_new);
    const State stage(t_new, std::move(n_star), std::move(c_star), std::move(u_star));

    const Tendency k2 = nonlinear_tendency(stage, p, opts.dealias_products);

    SpectralField n_new = heun_combine(s.n_hat(), k1.n, k2.n);
    SpectralField c_new = heun_combine(s.c_hat(), k1.c, k2.c);
    SpectralField u_new = leray_project(heun_combine(s.u_hat(), k1.u, k2.u));
    check_finite(n_new, c_new, u_new, t_new);
    return State(t_new, std::move(n_new), std::move(c_new), std::move(u_new));
  }

 private:
  static SpectralField axpy(const SpectralField& y, double a, const SpectralField& x) {
    SpectralField out = y;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += a * x.data()[i];
    return out;
  }

  SpectralField scale_modes(SpectralField f) const {
    const TorusGrid& g = *grid_;
    for (int c = 0; c < f.components(); ++c)
      for (std::size_t i = 0; i < g.points(); ++i) f.coef(c, i) *= efactor_[g.k_squared(i)];
    return f;
  }

  // y_{n+1} = E y_n + dt/2 (E k1 + k2)
  SpectralField heun_combine(const SpectralField& y, const SpectralField& k1,
                             const SpectralField& k2) const {
    const TorusGrid& g = *grid_;
    SpectralField out = y;
    for (int c = 0; c < out.components(); ++c) {
      for (std::size_t i = 0; i < g.points(); ++i) {
        const double e = efactor_[g.k_squared(i)];
        out.coef(c, i) = e * (y.coef(c, i) + 0.5 * dt_ * k1.coef(c, i)) +
                         0.5 * dt_ * k2.coef(c, i);
      }
    }
    return out;
  }

  static void check_finite(const SpectralField& n, const SpectralField& c, const SpectralField& u,
                           double t) {
    if (!n.all_finite() || !c.all_finite() || !u.all_finite()) throw blow_up_error(t);
  }

  GridPtr grid_;
  double dt_;
  std::vector<double> efactor_;
};

/// One-shot step with the nominal CFL warning semantics.
inline State step_imex(const State& s, double dt, const ModelParams& p, StepInfo* info = nullptr,
                       const StepOptions& opts = {}) {
  return ImexStepper(s.grid_ptr(), dt).step(s, p, opts, info);
}

enum class RunStatus { completed, blew_up };

/// Observer invoked after every accepted step (and once for the initial
/// state with step index 0).
using StepObserver = std::function<void(const State&, long step_index)>;

struct RunResult {
  RunStatus status = RunStatus::completed;
  double blowup_time = 0.0;
  double dt = 0.0;
  long steps_taken = 0;
  std::vector<double> times;  // step-boundary times including t0
  std::optional<State> final_state;
  std::vector<std::string> warnings;
};

/// March s0 to t_end with steps of dt (last step shortened to land on
/// t_end exactly). On blow-up the partial result is returned with
/// status = blew_up.
inline RunResult run(const State& s0, double t_end, double dt, const ModelParams& p,
                     const StepObserver& observer = {}, const StepOptions& opts = {}) {
  if (t_end < s0.time()) throw std::invalid_argument("run: t_end precedes initial time");
  RunResult result;
  result.dt = dt;
  result.times.push_back(s0.time());
  if (observer) observer(s0, 0);
  if (t_end == s0.time()) {
    result.final_state = s0;
    return result;
  }

  const double span = t_end - s0.time();
  long total = static_cast<long>(std::ceil(span / dt - 1e-12));
  if (total < 1) total = 1;

  ImexStepper stepper(s0.grid_ptr(), dt);
  State current = s0;
  bool warned_cfl = false;
  for (long i = 0; i < total; ++i) {
    const bool last = (i == total - 1);
    const double step_dt = last ? (t_end - current.time()) : dt;
    try {
      StepInfo info;
      if (last && std::abs(step_dt - dt) > 1e-15 * dt) {
        State next = ImexStepper(s0.grid_ptr(), step_dt).step(current, p, opts, &info);
        current = std::move(next);
      } else {
        State next = stepper.step(current, p, opts, &info);
        current = std::move(next);
      }
      if (info.cfl_warning && !warned_cfl) {
        result.warnings.push_back("CFL number " + std::to_string(info.cfl) +
                                  " exceeds threshold at t = " + std::to_string(current.time()));
        warned_cfl = true;
      }
    } catch (const blow_up_error& e) {
      result.status = RunStatus::blew_up;
      result.blowup_time = e.time;
      result.steps_taken = i;
      result.final_state = current;  // last finite state
      return result;
    }
    result.times.push_back(current.time());
    if (observer) observer(current, i + 1);
  }
  result.steps_taken = total;
  result.final_state = std::move(current);
  return result;
}

}  // namespace ctns
