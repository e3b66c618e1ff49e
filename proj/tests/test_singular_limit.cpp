#include <cmath>

#include "doctest.h"
#include "frontspeed/errors.hpp"
#include "frontspeed/singular_limit.hpp"
#include "frontspeed/speed_solver.hpp"

using namespace frontspeed;

namespace {

double real_cbrt(double x) { return x < 0 ? -std::pow(-x, 1.0 / 3) : std::pow(x, 1.0 / 3); }

}  // namespace

TEST_CASE("curve residual at the named points") {
  for (double c : {0.7, 1.0, 1.3, 2.2}) {
    CHECK(std::abs(curve_residual(0, 0, c, -c * c * c / 3)) < 1e-15);
    CHECK(curve_residual(1, c, c, -0.5) == 0.0);
    CHECK(std::abs(curve_residual(0.5, g_s(c, 0.5), c, k_origin(c))) < 1e-14);
    CHECK(std::abs(curve_residual(0.5, g_u(c, 0.5), c, k_nilpotent)) < 1e-14);
  }
}

TEST_CASE("g_s and g_u values") {
  for (double c : {0.7, 1.0, 1.3}) CHECK(std::abs(g_s(c, 0)) < 1e-15);
  // the radicand vanishes at T = 1, so the cube root turns rounding in c^3
  // (about 4e-16) into an error near 1e-5
  CHECK(std::abs(g_s(std::cbrt(1.5), 1.0) - std::cbrt(1.5)) < 1e-5);
  CHECK(g_s(1.0, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  for (double c : {0.7, 1.0, 1.3}) CHECK(g_u(c, 1.0) == c);
  CHECK(g_u(1.0, 0.5) == doctest::Approx(1.0 + real_cbrt(-0.375)).epsilon(1e-14));
  CHECK(g_u(1.0, 0.5) == doctest::Approx(0.2788752).epsilon(1e-6));
  for (double T : {0.1, 0.4, 0.9}) {
    CHECK(g_u(1.7, T) - 1.7 == doctest::Approx(g_u(0.9, T) - 0.9).epsilon(1e-14));
  }
}

TEST_CASE("singular speed") {
  const double cs = c_star_0();
  CHECK(std::abs(cs - 1.1447142425533319) <= 4e-16);
  CHECK(std::abs(cs * cs * cs - 1.5) < 1e-15);
  CHECK(cs >= std::cbrt(1.5));
  CHECK(cs <= std::sqrt(3.0));
  for (int i = 0; i <= 100; ++i) {
    const double T = i / 100.0;
    CHECK(std::abs(g_s(cs, T) - g_u(cs, T)) < (T < 0.95 ? 1e-13 : 1e-5));
  }
  // endpoints of the heteroclinic curve
  CHECK(std::abs(curve_residual(0, g_s(cs, 0), cs, k_origin(cs))) < 1e-14);
  CHECK(std::abs(curve_residual(1, g_s(cs, 1), cs, k_origin(cs))) < 1e-14);
  CHECK(std::abs(g_s(cs, 1) - cs) < 1e-5);
}

TEST_CASE("phi0 values") {
  CHECK(std::abs(phi0(c_star_0())) < 1e-15);
  const double gu_part = -real_cbrt(-0.375);
  CHECK(gu_part == doctest::Approx(0.7211247852).epsilon(1e-10));
  CHECK(phi0(1.0) == doctest::Approx(0.5 + gu_part).epsilon(1e-14));
  CHECK(phi0(1.2) == doctest::Approx(real_cbrt(1.125 - 1.728) + gu_part).epsilon(1e-14));
  CHECK(phi0(1.2) == doctest::Approx(-0.1237).epsilon(1e-3));
}

TEST_CASE("phi0 bracket and unique root") {
  CHECK(phi0(1.0) > 0);
  CHECK(phi0(1.2) < 0);
  for (double c = 1.0; c <= 1.8; c += 0.01) {
    if (c < c_star_0() - 1e-9) CHECK(phi0(c) > 0);
    if (c > c_star_0() + 1e-9) CHECK(phi0(c) < 0);
  }
  const auto r = brent_root(phi0, {1.0, 1.8}, 1e-13);
  CHECK(r.x == doctest::Approx(c_star_0()).epsilon(1e-12));
}

TEST_CASE("printed transversality derivative") {
  const double cs = c_star_0();
  const double d = dphi0_dc(cs, 0.5);
  CHECK(d == doctest::Approx(-std::pow(1.5, 2.0 / 3) / std::pow(0.375, 2.0 / 3)).epsilon(1e-14));
  CHECK(d == doctest::Approx(-std::pow(4.0, 2.0 / 3)).epsilon(1e-14));
  CHECK(d == doctest::Approx(-2.5198421).epsilon(1e-7));
  for (double c = 0.8; c <= 1.6; c += 0.05) {
    for (double T = 0.1; T <= 0.9; T += 0.05) {
      if (std::abs(3 * T - 1.5 * T * T - c * c * c) < 1e-6) continue;
      CHECK(dphi0_dc(c, T) < 0);
    }
  }
  CHECK_THROWS_AS(dphi0_dc(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(dphi0_dc(std::cbrt(1.125), 0.5), DomainError);
}

TEST_CASE("printed and two-term derivatives agree, and match finite differences") {
  // the g_u radicand has no c in it, so its c-derivative is exactly 1
  for (double c = 0.8; c <= 1.6; c += 0.1) {
    for (double T = 0.1; T <= 0.9; T += 0.1) {
      if (std::abs(3 * T - 1.5 * T * T - c * c * c) < 1e-3) continue;
      CHECK(dgu_dc(c, T) == 1.0);
      CHECK(dphi0_dc_full(c, T) == doctest::Approx(dphi0_dc(c, T)).epsilon(1e-13));
      const double h = 1e-6;
      const double fd = (phi0_at(c + h, T) - phi0_at(c - h, T)) / (2 * h);
      CHECK(std::abs(fd - dphi0_dc(c, T)) < 1e-6 * (1 + std::abs(fd)));
    }
  }
}

TEST_CASE("slope along g_s matches the separable form") {
  for (double c : {1.0, c_star_0(), 1.4}) {
    for (double T = 0.1; T < 0.95; T += 0.1) {
      const double W = g_s(c, T);
      if (std::abs(W - c) < 0.05) continue;
      const double h = 1e-6;
      const double slope = (g_s(c, T + h) - g_s(c, T - h)) / (2 * h);
      CHECK(slope == doctest::Approx((1 - T) / ((W - c) * (W - c))).epsilon(1e-8));
    }
  }
}
