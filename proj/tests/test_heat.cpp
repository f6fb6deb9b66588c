#include <catch2/catch.hpp>

#include "ctns/heat.hpp"
#include "ctns/random.hpp"
#include "ctns/verify.hpp"

using namespace ctns;

TEST_CASE("unforced heat flow is the exact mode-wise decay") {
  auto g = make_grid(2, 16);
  SpectralField u0 =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::sin(x[0]); }));
  const HeatTrajectory traj = heat_solve(u0, {}, 1.0, 0.05);
  const auto plus = g->flat_of_wavevector({1, 0, 0});
  CHECK(std::abs(traj.states.back().coef(0, plus) -
                 std::exp(-1.0) * u0.coef(0, plus)) < 1e-14);
}

TEST_CASE("constant forcing reproduces the Duhamel closed form at second order") {
  auto g = make_grid(2, 16);
  SpectralField famp =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::sin(x[0]); }));
  const auto plus = g->flat_of_wavevector({1, 0, 0});
  HeatForcing forcing = [&](double) { return famp; };

  auto error_at = [&](double dt) {
    const HeatTrajectory traj = heat_solve(SpectralField(g, 1), forcing, 1.0, dt);
    const std::complex<double> expect = (1.0 - std::exp(-1.0)) * famp.coef(0, plus);
    return std::abs(traj.states.back().coef(0, plus) - expect);
  };
  const double e1 = error_at(2e-3);
  const double e2 = error_at(1e-3);
  CHECK(e1 < 1e-6);
  CHECK(e1 / e2 == Approx(4.0).margin(0.5));
}

TEST_CASE("oscillatory forcing matches the analytic Duhamel integral") {
  auto g = make_grid(2, 16);
  SpectralField famp =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::sin(x[0]); }));
  const auto plus = g->flat_of_wavevector({1, 0, 0});
  const double omega = 3.0;
  HeatForcing forcing = [&](double t) { return std::cos(omega * t) * famp; };

  auto error_at = [&](double dt) {
    const double T = 1.0;
    const HeatTrajectory traj = heat_solve(SpectralField(g, 1), forcing, T, dt);
    // kappa = 1: int_0^T e^{-(T-s)} cos(omega s) ds
    const double duhamel =
        (std::cos(omega * T) + omega * std::sin(omega * T) - std::exp(-T)) / (1.0 + omega * omega);
    const std::complex<double> expect = duhamel * famp.coef(0, plus);
    return std::abs(traj.states.back().coef(0, plus) - expect);
  };
  const double e1 = error_at(2e-3);
  const double e2 = error_at(1e-3);
  CHECK(e1 < 1e-5);
  CHECK(e1 / e2 == Approx(4.0).margin(0.5));
}

TEST_CASE("parabolic check matches the single-mode closed form") {
  auto g = make_grid(2, 16);
  SpectralField u0 =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::cos(2.0 * x[0]); }));
  const double T = 0.3;
  const HeatTrajectory traj = heat_solve(u0, {}, T, 1e-4);
  const ParabolicReport rep = parabolic_regularity_check(traj, 0.0);
  // |k| = 2, alpha = 0: ratio = (1 - e^{-8T}) / 2
  const double expect = (1.0 - std::exp(-8.0 * T)) / 2.0;
  CHECK(rep.ratio_u == Approx(expect).epsilon(1e-4));
  CHECK(rep.ratio_u <= 0.5);
}

TEST_CASE("parabolic check is zero on zero data") {
  auto g = make_grid(2, 16);
  const HeatTrajectory traj = heat_solve(SpectralField(g, 1), {}, 0.2, 1e-3);
  const ParabolicReport rep = parabolic_regularity_check(traj, 0.0);
  CHECK(rep.ratio_u == 0.0);
  CHECK(rep.ratio_ut == 0.0);
}

TEST_CASE("parabolic ratio stays below one and is stable across grids") {
  const double c16 = parabolic_max_ratio(make_grid(2, 16), 2024, 50, {-1.0, 0.0, 1.0});
  const double c32 = parabolic_max_ratio(make_grid(2, 32), 2024, 50, {-1.0, 0.0, 1.0});
  CHECK(c16 <= 1.05);
  CHECK(c32 <= 1.05);
  CHECK(std::abs(c16 - c32) / c32 < 0.10);
}
