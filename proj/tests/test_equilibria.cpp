#include <cfloat>
#include <cmath>
#include <random>

#include "doctest.h"
#include "frontspeed/equilibria.hpp"
#include "frontspeed/errors.hpp"

using namespace frontspeed;

namespace {

// Roots of h(w) = w - c + eps^2 w (2c - w)/2, i.e. of
// -(eps^2/2) w^2 + (1 + eps^2 c) w - c, by the textbook formula.
std::pair<double, double> h_roots_naive(double c, double e) {
  const double a = -0.5 * e * e, b = 1 + e * e * c, cc = -c;
  const double d = std::sqrt(b * b - 4 * a * cc);
  const double r1 = (-b + d) / (2 * a), r2 = (-b - d) / (2 * a);
  return {std::min(r1, r2), std::max(r1, r2)};
}

void check_eigenpairs(const Matrix2& a, const Eigen2& e) {
  for (const auto& p : e.pairs) {
    if (e.complex) continue;
    const auto& v = p.vector;
    CHECK(std::hypot(v[0], v[1]) == doctest::Approx(1.0).epsilon(1e-14));
    const double r0 = a[0][0] * v[0] + a[0][1] * v[1] - p.re * v[0];
    const double r1 = a[1][0] * v[0] + a[1][1] * v[1] - p.re * v[1];
    CHECK(std::hypot(r0, r1) < 1e-10);
  }
}

}  // namespace

TEST_CASE("w_minus closed form") {
  CHECK(w_minus(1, 0) == 1.0);
  CHECK(w_minus(1, 1) == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(h_quadratic(w_minus(1, 1), 1, 1)) < 1e-14);
  const auto naive = h_roots_naive(1.0, 1.0);
  CHECK(w_minus(1, 1) == doctest::Approx(naive.first).epsilon(1e-13));

  // (w_- - c + eps^2 c^2 / 2) / eps^4 stays bounded
  const double c = 1.2;
  for (double e : {0.1, 0.03, 0.01, 0.003, 0.001}) {
    const double q = (w_minus(c, e) - c + 0.5 * e * e * c * c) / std::pow(e, 4);
    CHECK(std::abs(q) < 2.0);
  }
}

TEST_CASE("w_plus closed form") {
  CHECK(w_plus(1, 1) == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(w_plus(1, 0), DomainError);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(0.5, 2), ue(0.05, 0.5);
  for (int i = 0; i < 20; ++i) {
    const double c = uc(rng), e = ue(rng);
    const double w = w_plus(c, e);
    CHECK(std::abs(h_quadratic(w, c, e)) < 1e-12 * w * w * e * e + 1e-12);
    CHECK(w == doctest::Approx(h_roots_naive(c, e).second).epsilon(1e-12));
  }
  for (double e : {1e-2, 1e-3, 1e-4}) {
    CHECK(e * e * (w_plus(1.3, e) - 1.3) == doctest::Approx(2.0).epsilon(1e-6));
  }
}

TEST_CASE("w_minus below c and roots vanish on a grid") {
  for (double c = 0.5; c <= 2.0001; c += 0.1) {
    double prev_gap = 0;
    for (double e = 0.5; e > 1e-3; e *= 0.7) {
      const double wm = w_minus(c, e);
      CHECK(wm < c);
      CHECK(std::abs(h_quadratic(wm, c, e)) < 1e-12);
      // large root: scale by the size of the terms that cancel
      const double wp = w_plus(c, e);
      const double scale = wp + c + 0.5 * e * e * wp * (2 * c + wp);
      CHECK(std::abs(h_quadratic(wp, c, e)) < 8 * DBL_EPSILON * scale);
      const double gap = c - wm;
      if (prev_gap > 0) CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("fixed points at eps = 0") {
  const auto eq = equilibria_desing({1.0, 0.0});
  bool origin = false, nilpotent = false;
  for (const auto& e : eq) {
    if (e.location.T == 0 && e.location.W == 0) {
      origin = true;
      CHECK(e.kind == Kind::nonhyperbolic);  // eigenvalue 0 along the T = 0 axis
    }
    if (e.location.T == 1 && e.location.W == 1) {
      nilpotent = true;
      CHECK(e.kind == Kind::nonhyperbolic);
      CHECK(e.eigen.nilpotent);
    }
  }
  CHECK(origin);
  CHECK(nilpotent);
}

TEST_CASE("fixed points at eps = 0.1, c = 1.2") {
  const Params p{1.2, 0.1};
  const auto eq = equilibria_desing(p);
  bool saddle = false;
  for (const auto& e : eq) {
    const auto d = eval_desing_tw(e.location, p);
    CHECK(std::hypot(d.T, d.W) < 1e-12);
    check_eigenpairs(e.jacobian, e.eigen);
    if (e.location.T == 0 && e.location.W == 0) CHECK(e.kind == Kind::stable_node);
    if (e.location.T == 1 && e.location.W == w_minus(p.c, p.eps)) {
      saddle = true;
      CHECK(e.kind == Kind::saddle);
      const auto& j = e.jacobian;
      CHECK(j[0][0] + j[1][1] < 0);
      CHECK(j[0][0] * j[1][1] - j[0][1] * j[1][0] < 0);
    }
  }
  CHECK(saddle);
}

TEST_CASE("numerical Jacobian agrees with the hand-coded one") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uT(0, 1), uW(-0.5, 2), uc(0.8, 1.6), ue(0, 0.4);
  for (int i = 0; i < 50; ++i) {
    const Params p{uc(rng), ue(rng)};
    const PlanarState s{uT(rng), uW(rng)};
    const auto a = desing_jacobian(s, p), b = desing_jacobian_exact(s, p);
    for (int r = 0; r < 2; ++r)
      for (int k = 0; k < 2; ++k) CHECK(std::abs(a[r][k] - b[r][k]) < 1e-8);
  }
}

TEST_CASE("origin eigenvalues") {
  for (double c : {0.8, 1.0, 1.4}) {
    const auto [m, pl] = origin_eigenvalues({c, 0.0});
    CHECK(m == doctest::Approx(-c * c).epsilon(1e-9));
    CHECK(std::abs(pl) < 1e-9);
  }
  const auto [m, pl] = origin_eigenvalues({1.0, 0.1});
  CHECK(m < 0);
  CHECK(pl < 0);
  CHECK(m * pl == doctest::Approx(0.01).epsilon(1e-8));

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> uc(0.6, 2.0), ue(0.01, 0.25);
  for (int i = 0; i < 20; ++i) {
    const double c = uc(rng), e = ue(rng);
    // characteristic polynomial of [[-c^2, e^2 c^2], [-1, 0]]
    const double tr = -c * c, det = e * e * c * c;
    const double disc = std::sqrt(tr * tr - 4 * det);
    const double lo = (tr - disc) / 2, hi = (tr + disc) / 2;
    const auto [a, b] = origin_eigenvalues({c, e});
    CHECK(std::abs(a - lo) < 1e-10 * (1 + std::abs(lo)) * 10);
    CHECK(std::abs(b - hi) < 1e-10);
    // grid property: both negative while eps < c/2
    CHECK(a <= b);
    CHECK(b < 0);
  }
}

TEST_CASE("saddle at (1, w_-) on a grid") {
  for (double c = 0.6; c <= 2.0; c += 0.2) {
    for (double e : {0.3, 0.1, 0.03, 0.01}) {
      const Params p{c, e};
      const Eigen2 eig = eigen2(desing_jacobian({1.0, w_minus(c, e)}, p));
      CHECK_FALSE(eig.complex);
      CHECK(eig.pairs[0].re < 0);
      CHECK(eig.pairs[1].re > 0);
    }
  }
}

TEST_CASE("eigen2 basics") {
  auto e = eigen2(Matrix2{{{1, 0}, {0, 1}}});
  CHECK(e.pairs[0].re == 1.0);
  CHECK(e.pairs[1].re == 1.0);
  CHECK_FALSE(e.nilpotent);

  e = eigen2(Matrix2{{{0, 0}, {1, 0}}});
  CHECK(e.pairs[0].re == 0.0);
  CHECK(e.pairs[1].re == 0.0);
  CHECK(e.nilpotent);

  const Matrix2 d{{{-1, 0}, {0, 2}}};
  e = eigen2(d);
  CHECK(e.pairs[0].re == -1.0);
  CHECK(e.pairs[1].re == 2.0);
  CHECK(e.pairs[0].vector == std::array<double, 2>{1.0, 0.0});
  CHECK(e.pairs[1].vector == std::array<double, 2>{0.0, 1.0});

  e = eigen2(Matrix2{{{0, -1}, {1, 0}}});
  CHECK(e.complex);
  CHECK(e.pairs[1].im == doctest::Approx(1.0));
  CHECK(classify(e) == Kind::center);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const Matrix2 a{{{u(rng), u(rng)}, {u(rng), u(rng)}}};
    check_eigenpairs(a, eigen2(a));
  }
}
