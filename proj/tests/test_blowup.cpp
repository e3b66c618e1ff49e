#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "frontspeed/blowup.hpp"
#include "frontspeed/errors.hpp"

using namespace frontspeed;

namespace {

const double kCs = 1.1447142425533319;
const double kS23 = std::sqrt(2.0 / 3.0);

State<3> random_keps(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uT(-3, 0), uW(0.05, 4), ur(0, 0.5);
  return {uT(rng), uW(rng), ur(rng)};
}

}  // namespace

TEST_CASE("blow-down maps") {
  auto b = blowdown({Chart::kw, {0.2, 0.5, -0.8}});
  CHECK(b.T_tilde == doctest::Approx(-0.0064).epsilon(1e-14));
  CHECK(b.W_tilde == doctest::Approx(-0.04).epsilon(1e-14));
  CHECK(b.eps == doctest::Approx(0.1).epsilon(1e-14));
  for (double T1 : {-2.0, -0.1}) {
    for (double W1 : {0.5, 3.0}) {
      b = blowdown({Chart::keps, {T1, W1, 0.0}});
      CHECK(b.T_tilde == 0.0);
      CHECK(b.W_tilde == 0.0);
      CHECK(b.eps == 0.0);
    }
  }
}

TEST_CASE("chart transitions") {
  auto k = keps_to_kw({-1, 2, 0.1});
  CHECK(k[0] == doctest::Approx(0.1 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(k[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(k[2] == doctest::Approx(-std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(k[0] == doctest::Approx(0.141421).epsilon(1e-5));
  k = keps_to_kw({-0.7, 1, 0.3});
  CHECK(k[1] == 1.0);
  CHECK(k[0] == 0.3);
  CHECK(k[2] == -0.7);
  CHECK(kw_to_keps({0.2, 1.0, -0.5})[1] == 1.0);
  CHECK_THROWS_AS(keps_to_kw({-1, 0, 0.1}), DomainError);
  CHECK_THROWS_AS(keps_to_kw({-1, -2, 0.1}), DomainError);
  CHECK_THROWS_AS(kw_to_keps({0.1, 0, -1}), DomainError);
}

TEST_CASE("chart round trip and commutativity") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const State<3> p = random_keps(rng);
    const State<3> q = kw_to_keps(keps_to_kw(p));
    for (int j = 0; j < 3; ++j) CHECK(std::abs(q[j] - p[j]) <= 1e-12 * (1 + std::abs(p[j])));
    const auto a = blowdown({Chart::keps, p});
    const auto b = blowdown({Chart::kw, keps_to_kw(p)});
    CHECK(std::abs(a.T_tilde - b.T_tilde) < 1e-12);
    CHECK(std::abs(a.W_tilde - b.W_tilde) < 1e-12);
    CHECK(std::abs(a.eps - b.eps) < 1e-12);
  }
}

TEST_CASE("saddle of K_W maps to the saddle of K_eps") {
  for (double c : {0.9, kCs, 1.5}) {
    const auto q = kw_to_keps({0.0, std::sqrt(2 / (c * c)), 0.0});
    CHECK(q[1] == doctest::Approx(c * c / 2).epsilon(1e-14));
    CHECK(q[0] == 0.0);
  }
}

TEST_CASE("Hamiltonian values") {
  CHECK(hamiltonian(0, kCs * kCs / 2, kCs) == doctest::Approx(-std::pow(kCs, 6) / 48).epsilon(1e-14));
  CHECK(hamiltonian(0, kCs * kCs / 2, kCs) == doctest::Approx(-0.046875).epsilon(1e-14));
  CHECK(hamiltonian(0, 0, 1.3) == 0.0);
}

TEST_CASE("Hamiltonian is conserved by the sphere flow") {
  const double c = kCs;
  auto f = [c](const State<3>& x) { return eval_chart_keps(x, c); };
  IntegrateOptions<3> io;
  io.tol = {1e-12, 1e-12};
  for (const State<3> x0 : {State<3>{-0.05, 0.2, 0}, State<3>{0.02, 0.4, 0},
                            State<3>{-0.1, 0.05, 0}}) {
    const double h0 = hamiltonian(x0[0], x0[1], c);
    const auto tr = integrate<3>(f, x0, 0.0, 20.0, {}, io);
    CHECK(tr.status == Status::completed);
    double drift = 0;
    for (const auto& x : tr.x) drift = std::max(drift, std::abs(hamiltonian(x[0], x[1], c) - h0));
    CHECK(drift < 1e-8);
  }
}

TEST_CASE("unstable graph lies on the saddle level set") {
  for (double c : {0.9, kCs, 1.5}) {
    CHECK(std::abs(unstable_graph_keps(c * c / 2, c)) < 1e-12);
    for (double W1 = 0.0; W1 <= 12.0; W1 += 0.25) {
      const double T1 = unstable_graph_keps(W1, c);
      CHECK(T1 <= 0.0);
      const double scale = 1 + W1 * W1 * W1;
      CHECK(std::abs(hamiltonian(T1, W1, c) + std::pow(c, 6) / 48) < 1e-12 * scale);
    }
  }
  CHECK_THROWS_AS(unstable_graph_keps(-1.0, 1.0), DomainError);
}

TEST_CASE("shot unstable manifold on the sphere agrees with the graph") {
  const double c = kCs;
  const auto tr = shoot_keps_unstable(c, 0.0, 5.0);
  REQUIRE(tr.status == Status::event_stopped);
  for (const auto& x : tr.x) {
    CHECK(std::abs(hamiltonian(x[0], x[1], c) + std::pow(c, 6) / 48) < 1e-6);
    if (x[1] > c * c / 2 + 1e-3) CHECK(x[0] == doctest::Approx(unstable_graph_keps(x[1], c)).epsilon(1e-4));
  }
}

TEST_CASE("Sigma_in entry: eps2 = kappa and r2 = eps / kappa") {
  for (double kappa : {0.2, 0.3}) {
    for (double eps : {1e-3, 1e-2}) {
      const double W1 = 1 / (kappa * kappa);
      const auto k = keps_to_kw({unstable_graph_keps(W1, kCs), W1, eps});
      CHECK(k[1] == doctest::Approx(kappa).epsilon(1e-14));
      CHECK(k[0] == doctest::Approx(eps / kappa).epsilon(1e-14));
      CHECK(k[0] * k[1] == doctest::Approx(eps).epsilon(1e-14));
    }
  }
}

TEST_CASE("K_W fixed points at the singular speed") {
  const auto pts = kw_fixed_points(kCs);
  REQUIRE(pts.size() == 4);
  bool attractor = false, saddle = false;
  for (const auto& p : pts) {
    const auto d = eval_chart_kw({0.0, p.eps2, p.T2}, kCs);
    CHECK(std::hypot(d[1], d[2]) < 1e-14);
    if (p.eps2 == 0.0 && p.T2 == doctest::Approx(-0.8164966).epsilon(1e-7)) {
      attractor = true;
      CHECK(p.attractor);
      CHECK(p.eigen.pairs[0].re == doctest::Approx(-3 * kS23).epsilon(1e-8));
      CHECK(p.eigen.pairs[1].re == doctest::Approx(-0.5 * kS23).epsilon(1e-8));
      CHECK(p.eigen.pairs[0].re / p.eigen.pairs[1].re == doctest::Approx(6.0).epsilon(1e-8));
    }
    if (p.eps2 == doctest::Approx(1.2354293).epsilon(1e-7) && p.T2 == 0.0) saddle = true;
  }
  CHECK(attractor);
  CHECK(saddle);
}

TEST_CASE("classification on the sphere") {
  const double c = kCs;
  CHECK(classify(eigen2(keps_sphere_jacobian(0, c * c / 2, c))) == Kind::saddle);
  CHECK(classify(eigen2(keps_sphere_jacobian(0, 0, c))) == Kind::center);
}

TEST_CASE("blow-down of a K_W orbit follows the shifted field") {
  const double c = kCs;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ur(0.05, 0.4), ue(0.1, 1.0), uT(-1.0, -0.2);
  for (int i = 0; i < 100; ++i) {
    const State<3> x{ur(rng), ue(rng), uT(rng)};
    const auto d = eval_chart_kw(x, c);
    const double r = x[0];
    // chain rule through (T~, W~) = (r^3 T2, -r^2)
    const double dTt = 3 * r * r * d[0] * x[2] + r * r * r * d[2];
    const double dWt = -2 * r * d[0];
    const auto g = eval_shifted({r * r * r * x[2], -r * r, r * x[1]}, c);
    const double cross = dTt * g[1] - dWt * g[0];
    const double norm = std::hypot(dTt, dWt) * std::hypot(g[0], g[1]);
    CHECK(std::abs(cross) / norm < 1e-6);
    CHECK(dTt * g[0] + dWt * g[1] > 0);  // same orientation, positive time rescaling
  }
}

TEST_CASE("Sigma_in offset from the level set matches the leading term") {
  const double s2 = kS23 + unstable_graph_keps(1 / 0.09, kCs) * 0.027;
  CHECK(s2 == doctest::Approx(omega_leading(kCs, 0.3)).epsilon(0.1));
  CHECK(omega_leading(kCs, 0.3) == doctest::Approx(0.0361096).epsilon(1e-5));
}

TEST_CASE("transition flights") {
  const std::vector<double> eps{1e-3, 3e-3, 1e-2};
  const auto rep = verify_transition(kCs, 0.3, eps);
  REQUIRE(rep.entries.size() == 3);
  double prev_excess = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto& e = rep.entries[i];
    REQUIRE(e.ok);
    CHECK(e.invariant_drift < 1e-8);
    CHECK(e.sigma_in[1] == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(e.sigma_out[0] == doctest::Approx(0.3).epsilon(1e-12));
    // d = O(eps)
    CHECK(e.d < e.eps);
    // transit in sigma is log(1/eps) + O(1)
    const double excess = e.transit_sigma - std::log(1 / e.eps);
    if (i > 0) CHECK(std::abs(excess - prev_excess) < 0.5);
    prev_excess = excess;
  }
}

TEST_CASE("Sigma_in past Sigma_out is reported per entry") {
  const std::vector<double> eps{1e-2, 0.1};
  const auto rep = verify_transition(kCs, 0.3, eps);
  CHECK(rep.entries[0].ok);
  CHECK_FALSE(rep.entries[1].ok);
  CHECK_FALSE(rep.entries[1].error.empty());
  CHECK_FALSE(rep.pass);
}

TEST_CASE("verification is independent of the worker count") {
  const std::vector<double> eps{1e-3, 1e-2, 3e-2};
  TransitionOptions one, four;
  four.workers = 4;
  const auto a = verify_transition(kCs, 0.3, eps, one);
  const auto b = verify_transition(kCs, 0.3, eps, four);
  for (std::size_t i = 0; i < eps.size(); ++i) CHECK(a.entries[i].d == b.entries[i].d);
}

TEST_CASE("portrait grids") {
  const auto p = portrait(Chart::keps, kCs, 5);
  CHECK(p.size() == 25);
  const auto q = portrait(Chart::kw, kCs, 7);
  CHECK(q.size() == 49);
  CHECK_THROWS_AS(portrait(Chart::kw, kCs, 1), DomainError);
}

// d / eps within a factor 3 over eps in [1e-3, 1e-1]. Expected to fail: d grows like eps^2.
TEST_CASE("transition scaling d/eps within a factor 3") {
  const std::vector<double> eps{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  for (double kappa : {0.2, 0.3}) {
    const auto rep = verify_transition(kCs, kappa, eps);
    INFO("kappa = " << kappa << ", spread = " << rep.ratio_spread << ", order = " << rep.order);
    for (const auto& e : rep.entries) {
      INFO("eps = " << e.eps << (e.ok ? "" : " failed: " + e.error));
      CHECK(e.ok);
    }
    CHECK(rep.ratio_spread < 3.0);
  }
}
