#include <catch2/catch.hpp>

#include "ctns/field.hpp"
#include "ctns/operators.hpp"
#include "ctns/random.hpp"

using namespace ctns;

TEST_CASE("leray annihilates gradients and passes divergence-free fields") {
  auto g = make_grid(2, 16);

  // U = grad psi, psi = sin(x1 + x2)
  SpectralField psi =
      to_spectral(RealField::sample_scalar(g, [](auto x) { return std::sin(x[0] + x[1]); }));
  SpectralField gp = gradient(psi);
  CHECK(leray_project(gp).max_abs() < 1e-14);

  // U = (sin x2, 0) is already divergence-free
  SpectralField u = to_spectral(
      RealField::sample_vector(g, [](int c, auto x) { return c == 0 ? std::sin(x[1]) : 0.0; }));
  SpectralField pu = leray_project(u);
  double diff = 0.0;
  for (std::size_t i = 0; i < u.data().size(); ++i)
    diff = std::max(diff, std::abs(pu.data()[i] - u.data()[i]));
  CHECK(diff < 1e-15);

  // U = (sin x1, 0): the k = e1 mode is parallel to k, so it is removed
  SpectralField v = to_spectral(
      RealField::sample_vector(g, [](int c, auto x) { return c == 0 ? std::sin(x[0]) : 0.0; }));
  CHECK(leray_project(v).max_abs() < 1e-15);
}

TEST_CASE("leray is idempotent and divergence-free on random fields") {
  auto g = make_grid(2, 32);
  for (int t = 0; t < 50; ++t) {
    SpectralField v(g, 2);
    for (int c = 0; c < 2; ++c) {
      SpectralField comp = random_smooth_scalar(g, 500 + t, 11 * (c + 1), 1.0, 8.0);
      for (std::size_t i = 0; i < g->points(); ++i) v.coef(c, i) = comp.coef(0, i);
    }
    const SpectralField pv = leray_project(v);
    const SpectralField ppv = leray_project(pv);
    const double scale = std::max(1e-300, pv.max_abs());
    double diff = 0.0;
    for (std::size_t i = 0; i < pv.data().size(); ++i)
      diff = std::max(diff, std::abs(ppv.data()[i] - pv.data()[i]));
    CHECK(diff / scale < 1e-12);
    CHECK(max_divergence(pv) / scale < 1e-12);
  }
}

TEST_CASE("derivative commutes with leray on divergence-free fields") {
  auto g = make_grid(3, 16);
  const SpectralField u = random_smooth_vector(g, 77, 5, 1.0, 4.0);
  REQUIRE(max_divergence(u) < 1e-12);
  for (int axis = 0; axis < 3; ++axis) {
    const SpectralField a = derivative(leray_project(u), axis);
    const SpectralField b = leray_project(derivative(u, axis));
    double diff = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
      diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
    CHECK(diff < 1e-12 * std::max(1.0, a.max_abs()));
  }
}

TEST_CASE("divergence of a gradient is the laplacian") {
  auto g = make_grid(2, 16);
  const SpectralField psi = random_smooth_scalar(g, 3, 1, 1.0, 4.0);
  const SpectralField a = divergence(gradient(psi));
  const SpectralField b = laplacian(psi);
  double diff = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    diff = std::max(diff, std::abs(a.data()[i] - b.data()[i]));
  CHECK(diff < 1e-12 * std::max(1.0, b.max_abs()));
}
