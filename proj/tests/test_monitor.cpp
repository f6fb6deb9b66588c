#include <catch2/catch.hpp>

#include "ctns/initial.hpp"
#include "ctns/monitor.hpp"
#include "ctns/random.hpp"
#include "ctns/simulation.hpp"
#include "ctns/verify.hpp"

using namespace ctns;

namespace {

State c_only_state(GridPtr g, const SpectralField& c) {
  return State(0.0, SpectralField(g, 1), c, SpectralField(g, g->dim()));
}

}  // namespace

TEST_CASE("monitor config ranges: defaults are silent, violations warn") {
  MonitorConfig cfg;
  CHECK(cfg.range_warnings().empty());

  cfg.r = 2.5;
  const auto w = cfg.range_warnings();
  REQUIRE_FALSE(w.empty());
  CHECK(w.front().find("outside paper range") != std::string::npos);

  MonitorConfig bad;
  bad.C0 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  MonitorConfig s_out;
  s_out.s = 0.2;
  CHECK_FALSE(s_out.range_warnings().empty());
}

TEST_CASE("velocity dissipation wavenumber follows the definition") {
  auto g = make_grid(2, 64);
  DyadicBank bank(g);
  REQUIRE(bank.q_max() >= 5);
  MonitorConfig cfg;  // C0 = 0.1

  // zero field: the condition holds vacuously, floor convention gives (1, 0)
  CHECK(dissipation_wavenumber_u(SpectralField(g, 2), bank, cfg) ==
        std::pair<double, int>{1.0, 0});

  // single-shell field at q = 5 (|k| = 32, phi_5(32) = 1)
  auto shell5 = [&](double amp) {
    return to_spectral(RealField::sample_vector(
        g, [amp](int c, auto x) { return c == 0 ? amp * std::cos(32.0 * x[1]) : 0.0; }));
  };
  // ||u_5||_inf = 4: 2^-5 * 4 = 0.125 >= C0, so Q_u = 5
  CHECK(dissipation_wavenumber_u(shell5(4.0), bank, cfg) == std::pair<double, int>{32.0, 5});
  // ||u_5||_inf = 1: 2^-5 = 0.03125 < C0 everywhere above 0
  CHECK(dissipation_wavenumber_u(shell5(1.0), bank, cfg) == std::pair<double, int>{1.0, 0});
}

TEST_CASE("oxygen dissipation wavenumber uses the lambda^{3/r} weight") {
  auto g = make_grid(2, 32);
  DyadicBank bank(g);
  MonitorConfig cfg;  // r = 3.2, C0 = 0.1

  CHECK(dissipation_wavenumber_c(SpectralField(g, 1), bank, cfg) ==
        std::pair<double, int>{1.0, 0});

  // c = a cos(8 x1) sits in shell 3; choose a for a target ||c_3||_r = rho
  RealField unit = RealField::sample_scalar(g, [](auto x) { return std::cos(8.0 * x[0]); });
  const double unit_r = lp_norm(unit, cfg.r);

  // rho = 0.02: 2^{9/3.2} * 0.02 = 0.1405 >= C0 -> (8, 3)
  SpectralField c1 = to_spectral((0.02 / unit_r) * unit);
  CHECK(dissipation_wavenumber_c(c1, bank, cfg) == std::pair<double, int>{8.0, 3});

  // rho = 0.001: threshold 0.00703 < C0 -> (1, 0)
  SpectralField c2 = to_spectral((0.001 / unit_r) * unit);
  CHECK(dissipation_wavenumber_c(c2, bank, cfg) == std::pair<double, int>{1.0, 0});
}

TEST_CASE("raising C0 never raises the wavenumbers") {
  auto g = make_grid(2, 32);
  DyadicBank bank(g);
  const SpectralField u = random_smooth_vector(g, 5, 2, 3.0, 8.0);
  int prev = bank.q_max() + 1;
  for (double c0 : {0.01, 0.05, 0.1, 0.5, 2.0}) {
    MonitorConfig cfg;
    cfg.C0 = c0;
    const int q = dissipation_wavenumber_u(u, bank, cfg).second;
    CHECK(q <= prev);
    prev = q;
  }
}

TEST_CASE("criterion f reproduces the single-mode pipelines") {
  auto g = make_grid(2, 32);
  DyadicBank bank(g);
  MonitorConfig cfg;

  // u = 0, c constant
  SpectralField cconst(g, 1);
  cconst.coef(0, g->flat_of_wavevector({0, 0, 0})) = 3.0;
  CHECK(criterion_f(c_only_state(g, cconst), bank, cfg).total == 0.0);

  // u = 0, c = A sin x1: f = A^2
  const double A = 0.37;
  SpectralField csin =
      to_spectral(RealField::sample_scalar(g, [A](auto x) { return A * std::sin(x[0]); }));
  const CriterionValue vc = criterion_f(c_only_state(g, csin), bank, cfg);
  CHECK(vc.total == Approx(A * A).epsilon(1e-12));
  CHECK(vc.grad_c_sq == Approx(A * A).epsilon(1e-12));
  CHECK(vc.besov_u == 0.0);

  // u = B sin(x1) e2 (divergence-free), c = 0: f = B
  const double B = 0.53;
  SpectralField u = to_spectral(RealField::sample_vector(
      g, [B](int comp, auto x) { return comp == 1 ? B * std::sin(x[0]) : 0.0; }));
  const State su(0.0, SpectralField(g, 1), SpectralField(g, 1), u);
  const CriterionValue vu = criterion_f(su, bank, cfg);
  CHECK(vu.total == Approx(B).epsilon(1e-12));
  CHECK(vu.besov_u == Approx(B).epsilon(1e-12));
}

TEST_CASE("f only sees the low modes") {
  auto g = make_grid(2, 32);
  DyadicBank bank(g);
  MonitorConfig cfg;

  SpectralField c =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return 0.4 * std::sin(x[0]); }));
  SpectralField u = to_spectral(RealField::sample_vector(
      g, [](int comp, auto x) { return comp == 1 ? 0.3 * std::sin(x[0]) : 0.0; }));
  const State base(0.0, SpectralField(g, 1), c, u);
  const CriterionValue f0 = criterion_f(base, bank, cfg);
  REQUIRE(f0.q_u == 0);
  REQUIRE(f0.q_c == 0);

  // add faint content in shell 3 (|k| = 12): small enough to leave Q_u, Q_c
  // at 0, far enough above max(Q)+2 to leave the truncations untouched
  SpectralField c2 = c;
  const double eps_amp = 0.0005;
  c2.coef(0, g->flat_of_wavevector({12, 0, 0})) = eps_amp;
  c2.coef(0, g->flat_of_wavevector({-12, 0, 0})) = eps_amp;
  SpectralField u2 = u;
  u2.coef(1, g->flat_of_wavevector({12, 0, 0})) = eps_amp;
  u2.coef(1, g->flat_of_wavevector({-12, 0, 0})) = eps_amp;
  const State bumped(0.0, SpectralField(g, 1), c2, u2);
  const CriterionValue f1 = criterion_f(bumped, bank, cfg);
  CHECK(f1.q_u == f0.q_u);
  CHECK(f1.q_c == f0.q_c);
  CHECK(f1.total == Approx(f0.total).epsilon(1e-12));
}

TEST_CASE("shell energies match weighted hand sums") {
  auto g = make_grid(2, 32);
  MonitorConfig cfg;  // s = -0.1
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, cfg, p);

  CHECK(mon.shell_energy(State::zero(g)) == std::array<double, 3>{0.0, 0.0, 0.0});

  // n = cos x1 only: E_n = ||cos||_2^2 = 2 pi^2 (shell 0, lambda_0 = 1)
  SpectralField n =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::cos(x[0]); }));
  const State s(0.0, n, SpectralField(g, 1), SpectralField(g, 2));
  CHECK(mon.shell_energy(s)[0] == Approx(2.0 * M_PI * M_PI).epsilon(1e-12));

  // two shells: n = a cos(x1) + b cos(8 x2), shells 0 and 3
  const double a = 0.8, b = 0.25;
  SpectralField n2 = to_spectral(RealField::sample_scalar(
      g, [a, b](auto x) { return a * std::cos(x[0]) + b * std::cos(8.0 * x[1]); }));
  const State s2(0.0, n2, SpectralField(g, 1), SpectralField(g, 2));
  const double expect = 2.0 * M_PI * M_PI *
                        (a * a + std::pow(8.0, 2.0 * cfg.s) * b * b);
  CHECK(mon.shell_energy(s2)[0] == Approx(expect).epsilon(1e-12));
}

TEST_CASE("flux terms vanish with their factors and match hand quadrature") {
  auto g = make_grid(2, 32);
  MonitorConfig cfg;
  ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, cfg, p);

  // u = 0 kills I, II, III
  SpectralField n =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::cos(x[0]); }));
  SpectralField c =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return 1.0 + 0.5 * std::sin(x[1]); }));
  const State no_u(0.0, n, c, SpectralField(g, 2));
  const FluxTerms t1 = mon.flux_terms(no_u);
  CHECK(t1.I == 0.0);
  CHECK(t1.II == 0.0);
  CHECK(t1.III == 0.0);

  // n = 0 kills III, IV, V, VI
  SpectralField u = to_spectral(RealField::sample_vector(
      g, [](int comp, auto x) { return comp == 0 ? 0.4 * std::sin(x[1]) : 0.0; }));
  const State no_n(0.0, SpectralField(g, 1), c, u);
  const FluxTerms t2 = mon.flux_terms(no_n);
  CHECK(t2.III == 0.0);
  CHECK(t2.IV == 0.0);
  CHECK(t2.V == 0.0);
  CHECK(t2.VI == 0.0);

  // IV for n = cos x1, u = A (0, cos x1), grav = (0, -1):
  // IV = -int (n grav . u) dx weighted at shell 0 = A * 2 pi^2
  const double A = 0.6;
  SpectralField ub = to_spectral(RealField::sample_vector(
      g, [A](int comp, auto x) { return comp == 1 ? A * std::cos(x[0]) : 0.0; }));
  const State sb(0.0, n, SpectralField(g, 1), ub);
  const FluxTerms t3 = mon.flux_terms(sb);
  CHECK(t3.IV == Approx(A * 2.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("transport commutator cancellation holds to quadrature accuracy") {
  auto g = make_grid(2, 32);
  DyadicBank bank(g);
  MonitorConfig cfg;
  const SpectralField u = dealias(random_smooth_vector(g, 31, 6, 1.0, 6.0));
  REQUIRE(max_divergence(u) < 1e-12);
  const double defect = transport_commutator_defect(u, bank, cfg.s);
  // scale: the same sum with the cancellation absent would be O(|u|^3)
  const double scale = std::pow(l2_norm(u), 3.0) + 1.0;
  CHECK(std::abs(defect) < 1e-10 * scale);

  // the two evaluation routes of term I then agree to the same accuracy
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, cfg, p);
  const State s(0.0, SpectralField(g, 1), SpectralField(g, 1), u);
  const double I_direct = mon.flux_terms(s).I;
  const double I_minus_transport = I_direct - defect;
  CHECK(I_direct == Approx(I_minus_transport).margin(1e-10 * scale));
}

TEST_CASE("budget residual vanishes for the linear heat balance") {
  auto g = make_grid(2, 16);
  MonitorConfig cfg;
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, cfg, p);

  SpectralField c =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return 0.1 * std::sin(x[0]); }));
  const State s0 = c_only_state(g, c);
  const Trajectory traj = run_monitored(s0, 4e-5, 5e-6, p, mon, 1);
  REQUIRE(traj.records.size() == 9);
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    CHECK(std::abs(traj.records[i].residual_c) < 1e-10);
    CHECK(traj.records[i].residual_n == 0.0);
    CHECK(std::abs(traj.records[i].residual_u) == 0.0);
  }
}

TEST_CASE("budget residuals converge at second order on the nonlinear run") {
  const BudgetRichardson br = budget_richardson(make_grid(2, 16), 2025);
  for (int i = 0; i < 3; ++i) {
    CHECK(br.ratio[i] > 3.0);
    CHECK(br.ratio[i] < 5.0);
  }
  // equilibrium sanity: all-zero run has identically zero residuals
  auto g = make_grid(2, 16);
  const Monitor mon(g, MonitorConfig{}, ModelParams::defaults(2));
  const Trajectory traj = run_monitored(State::zero(g), 0.01, 1e-3, ModelParams::defaults(2), mon, 1);
  for (const auto& r : traj.records) {
    CHECK(r.residual_n == 0.0);
    CHECK(r.residual_c == 0.0);
    CHECK(r.residual_u == 0.0);
  }
}

TEST_CASE("criterion integral is the trapezoid of f") {
  CHECK(criterion_integral({}).integral == 0.0);

  DiagnosticsRecord r0, r1;
  r0.time = 0.0;
  r0.f_value = 2.0;
  r1.time = 0.5;
  r1.f_value = 2.0;
  const auto ci = criterion_integral({r0, r1});
  CHECK(ci.integral == Approx(1.0));
  CHECK(ci.max_f == 2.0);

  // heat decay of c = A sin(x1): f(t) = A^2 e^{-2t}
  auto g = make_grid(2, 16);
  const double A = 0.4, T = 0.5;
  SpectralField c =
      to_spectral(RealField::sample_scalar(g, [A](auto x) { return A * std::sin(x[0]); }));
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, MonitorConfig{}, p);
  const Trajectory traj = run_monitored(c_only_state(g, c), T, 1e-3, p, mon, 1);
  const double expect = A * A * (1.0 - std::exp(-2.0 * T)) / 2.0;
  CHECK(criterion_integral(traj.records).integral == Approx(expect).epsilon(1e-5));
  // the running column agrees with the batch computation
  CHECK(traj.records.back().f_integral ==
        Approx(criterion_integral(traj.records).integral).epsilon(1e-12));
}

TEST_CASE("wavenumber log bound: zero run and the single-shell closed form") {
  CHECK(wavenumber_log_bound({}).max_ratio == 0.0);

  DiagnosticsRecord zero;
  zero.q_u = 0;
  zero.u_hs1 = 0.0;
  CHECK(wavenumber_log_bound({zero}).max_ratio == 0.0);

  auto g = make_grid(2, 64);
  DyadicBank bank(g);
  MonitorConfig cfg;
  const double amp = 4.0;
  SpectralField u = to_spectral(RealField::sample_vector(
      g, [amp](int c, auto x) { return c == 0 ? amp * std::cos(32.0 * x[1]) : 0.0; }));
  const State s(0.0, SpectralField(g, 1), SpectralField(g, 1), u);
  const Monitor mon(g, cfg, ModelParams::defaults(2));
  const DiagnosticsRecord rec = mon.record(s);
  REQUIRE(rec.q_u == 5);
  const double expect = 5.0 / (1.0 + std::log2(sobolev_norm(u, cfg.s + 1.0)));
  CHECK(wavenumber_log_bound({rec}).max_ratio == Approx(expect).epsilon(1e-12));
}

TEST_CASE("conservation report tracks mass, sup c, and sign violations") {
  CHECK(conservation_report({}).mass_max_drift == 0.0);

  // heat-only n run: the zero mode is exactly preserved
  auto g = make_grid(2, 16);
  SpectralField n =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return 1.0 + 0.3 * std::cos(x[0]); }));
  const State s0(0.0, n, SpectralField(g, 1), SpectralField(g, 2));
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, MonitorConfig{}, p);
  const Trajectory traj = run_monitored(s0, 0.2, 1e-3, p, mon, 1);
  const ConservationReport rep = conservation_report(traj.records);
  CHECK(rep.mass_initial == Approx(std::pow(two_pi, 2)).epsilon(1e-12));
  CHECK(rep.mass_max_drift < 1e-12);
  CHECK(rep.max_neg_n_fraction == 0.0);
  CHECK(rep.max_div_u == 0.0);
}

TEST_CASE("records keep the wavenumber bookkeeping consistent") {
  auto g = make_grid(2, 32);
  InitialConditionSpec ic;
  ic.preset = "random_smooth";
  ic.amplitude = 0.5;
  ic.seed = 77;
  ic.k0 = 5.0;
  const State s0 = generate_initial(ic, g);
  const ModelParams p = ModelParams::defaults(2);
  const Monitor mon(g, MonitorConfig{}, p);
  const Trajectory traj = run_monitored(s0, 0.05, 1e-3, p, mon, 5);
  REQUIRE(traj.records.size() == 11);
  for (const auto& r : traj.records) {
    CHECK(r.lambda_u == std::ldexp(1.0, r.q_u));
    CHECK(r.lambda_c == std::ldexp(1.0, r.q_c));
    CHECK(r.f_value >= 0.0);
    CHECK(r.separation_ok);
    CHECK(r.div_u_max < 1e-10);
  }
}
