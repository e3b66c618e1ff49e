#include "frontspeed/blowup.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "frontspeed/errors.hpp"

namespace frontspeed {
namespace {

const double kSqrt23 = std::sqrt(2.0 / 3.0);

}  // namespace

BlowdownPoint blowdown(const ChartPoint& pt) {
  const auto& x = pt.coords;
  if (pt.chart == Chart::keps) {
    const double r = x[2];
    return {r * r * r * x[0], -r * r * x[1], r};
  }
  const double r = x[0];
  return {r * r * r * x[2], -r * r, r * x[1]};
}

State<3> keps_to_kw(const State<3>& keps) {
  const auto [T1, W1, r1] = keps;
  if (!(W1 > 0.0)) throw DomainError("keps_to_kw requires W1 > 0 (outside the chart overlap)");
  const double s = std::sqrt(W1);
  return {r1 * s, 1.0 / s, T1 / (W1 * s)};
}

State<3> kw_to_keps(const State<3>& kw) {
  const auto [r2, e2, T2] = kw;
  if (!(e2 > 0.0)) throw DomainError("kw_to_keps requires eps2 > 0 (outside the chart overlap)");
  return {T2 / (e2 * e2 * e2), 1.0 / (e2 * e2), r2 * e2};
}

double hamiltonian(double T1, double W1, double c) {
  return W1 * W1 * W1 / 3.0 - 0.25 * c * c * W1 * W1 - 0.5 * T1 * T1;
}

double unstable_graph_keps(double W1, double c) {
  // 2/3 W1^3 - c^2/2 W1^2 + c^6/24 has a double root at the saddle.
  const double c2 = c * c;
  const double lin = 2.0 / 3.0 * W1 + c2 / 6.0;
  if (lin < 0.0) throw DomainError("level set H = -c^6/48 has no real branch here");
  return -std::abs(W1 - 0.5 * c2) * std::sqrt(lin);
}

double keps_saddle_W1(double c, double r1) {
  const double r4 = r1 * r1 * r1 * r1;
  return c * c / (1.0 + std::sqrt(1.0 + r4 * c * c));
}

Matrix2 kw_subsystem_jacobian(double eps2, double T2, double c, double step) {
  auto f = [c](const State<2>& x) {
    const State<3> d = eval_chart_kw({0.0, x[0], x[1]}, c);
    return State<2>{d[1], d[2]};
  };
  return numerical_jacobian<2>(f, {eps2, T2}, step);
}

Matrix2 keps_sphere_jacobian(double T1, double W1, double c, double step) {
  auto f = [c](const State<2>& x) {
    const State<3> d = eval_chart_keps({x[0], x[1], 0.0}, c);
    return State<2>{d[0], d[1]};
  };
  return numerical_jacobian<2>(f, {T1, W1}, step);
}

std::vector<KwFixedPoint> kw_fixed_points(double c) {
  if (!(c > 0.0)) throw DomainError("c must be positive");
  const double e = std::sqrt(2.0) / c;
  std::vector<KwFixedPoint> pts{
      {0.0, -kSqrt23, true, {}}, {0.0, kSqrt23, false, {}}, {e, 0.0, false, {}}, {-e, 0.0, false, {}}};
  for (auto& p : pts) p.eigen = eigen2(kw_subsystem_jacobian(p.eps2, p.T2, c));
  return pts;
}

Trajectory<3> shoot_keps_unstable(double c, double r1, double W1_stop, double delta,
                                  Tolerances tol) {
  const double W1s = keps_saddle_W1(c, r1);
  auto f2 = [c, r1](const State<2>& x) {
    const State<3> d = eval_chart_keps({x[0], x[1], r1}, c);
    return State<2>{d[0], d[1]};
  };
  const Eigen2 eig = eigen2(numerical_jacobian<2>(f2, {0.0, W1s}));
  if (eig.complex || !(eig.pairs[1].re > 0.0)) {
    throw IntegrationError("K_eps saddle has no unstable direction");
  }
  auto v = eig.pairs[1].vector;
  if (v[0] > 0.0) v = {-v[0], -v[1]};
  const State<3> x0{delta * v[0], W1s + delta * v[1], r1};
  const Section stop{1, W1_stop, Crossing::rising, true, 1};
  IntegrateOptions<3> io;
  io.tol = tol;
  io.box = Box<3>{{-1e6, -1.0, r1 - 1.0}, {1.0, 1e6, r1 + 1.0}};
  auto f3 = [c](const State<3>& x) { return eval_chart_keps(x, c); };
  Trajectory<3> tr = integrate<3>(f3, x0, 0.0, 1e5, std::span(&stop, 1), io);
  if (tr.status != Status::event_stopped) {
    throw IntegrationError("K_eps unstable manifold did not reach W1 = " + std::to_string(W1_stop) +
                           " (" + std::string(to_string(tr.status)) + ")");
  }
  return tr;
}

double phi_kappa(double c, double kappa) {
  auto f = [c](const State<3>& x) { return eval_chart_kw(x, c); };
  const Section out{0, kappa, Crossing::rising, true, 1};
  IntegrateOptions<3> io;
  io.tol = {1e-15, 1e-13};
  io.record = false;
  // Unstable eigenvector of (0, 0, -sqrt(2/3)) within eps2 = 0 is the r2 axis.
  const State<3> x0{1e-8, 0.0, -kSqrt23};
  const Trajectory<3> tr = integrate<3>(f, x0, 0.0, 1e4, std::span(&out, 1), io);
  if (tr.status != Status::event_stopped) {
    throw IntegrationError("unstable manifold of the K_W attractor did not reach r2 = kappa");
  }
  return tr.events.back().state[2] + kSqrt23;
}

double omega_leading(double c, double kappa) {
  return std::sqrt(3.0 / 8.0) * 0.5 * c * c * kappa * kappa;
}

namespace {

TransitionEntry transit_one(double c, double kappa, double eps, double phi,
                            const TransitionOptions& opt) {
  TransitionEntry e;
  e.eps = eps;
  if (!(eps > 0.0)) {
    e.error = "eps must be positive";
    return e;
  }
  if (!(eps < kappa * kappa)) {
    // Sigma_in sits at r2 = eps / kappa, beyond Sigma_out = {r2 = kappa}.
    e.error = "Sigma_in lies beyond Sigma_out (requires eps < kappa^2)";
    return e;
  }
  try {
    const double W1_in = 1.0 / (kappa * kappa);
    const Trajectory<3> k = shoot_keps_unstable(c, eps, W1_in, opt.delta, opt.tol);
    const State<3> in = keps_to_kw(k.events.back().state);
    e.sigma_in = in;
    e.s2_in = in[2] + kSqrt23;
    e.s2_in0 = kSqrt23 + unstable_graph_keps(W1_in, c) * kappa * kappa * kappa;

    // Flight through K_W carrying sigma with dsigma/dt2 = (-T2 - r2^3 T2^2)/2.
    auto f = [c](const State<4>& x) {
      const State<3> d = eval_chart_kw({x[0], x[1], x[2]}, c);
      const double r3 = x[0] * x[0] * x[0];
      return State<4>{d[0], d[1], d[2], 0.5 * (-x[2] - r3 * x[2] * x[2])};
    };
    const Section out{0, kappa, Crossing::rising, true, 1};
    IntegrateOptions<4> io;
    io.tol = opt.tol;
    io.box = Box<4>{{0.0, 0.0, -2.0, -1.0}, {1.0, 2.0 * kappa, 1.0, 1e3}};
    const Trajectory<4> tr = integrate<4>(f, {in[0], in[1], in[2], 0.0}, 0.0, 1e5,
                                          std::span(&out, 1), io);
    if (tr.status != Status::event_stopped) {
      e.error = "K_W flight did not reach Sigma_out (" + std::string(to_string(tr.status)) + ")";
      return e;
    }
    for (const auto& x : tr.x) {
      e.invariant_drift = std::max(e.invariant_drift, std::abs(x[0] * x[1] - eps));
    }
    const State<4>& o = tr.events.back().state;
    e.sigma_out = {o[0], o[1], o[2]};
    e.transit_sigma = o[3];
    e.d = std::abs(o[2] + kSqrt23 - phi);
    e.ratio = e.d / eps;
    e.ok = true;
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace

TransitionReport verify_transition(double c, double kappa, std::span<const double> eps_list,
                                   const TransitionOptions& opt) {
  if (!(kappa > 0.0 && kappa <= 0.5)) throw DomainError("kappa must lie in (0, 0.5]");
  if (!(c > 0.0)) throw DomainError("c must be positive");
  TransitionReport rep;
  rep.c = c;
  rep.kappa = kappa;
  rep.phi = phi_kappa(c, kappa);
  rep.entries.resize(eps_list.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < eps_list.size(); i = next++) {
      rep.entries[i] = transit_one(c, kappa, eps_list[i], rep.phi, opt);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(opt.workers, eps_list.size()));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  bool all_ok = !rep.entries.empty();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const auto& e : rep.entries) {
    if (!e.ok) {
      all_ok = false;
      continue;
    }
    lo = std::min(lo, e.ratio);
    hi = std::max(hi, e.ratio);
    if (e.d > 0.0) {
      const double x = std::log(e.eps), y = std::log(e.d);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++m;
    }
  }
  rep.ratio_spread = lo > 0.0 && std::isfinite(lo) ? hi / lo : std::numeric_limits<double>::infinity();
  rep.order = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                     : std::numeric_limits<double>::quiet_NaN();
  rep.pass = all_ok && rep.ratio_spread < 3.0;
  return rep;
}

std::vector<std::array<double, 4>> portrait(Chart chart, double c, std::size_t n) {
  if (n < 2) throw DomainError("portrait grid needs at least 2 points per axis");
  std::vector<std::array<double, 4>> out;
  out.reserve(n * n);
  const double x0 = chart == Chart::keps ? -2.0 : 0.0, x1 = chart == Chart::keps ? 0.5 : 1.5;
  const double y0 = chart == Chart::keps ? -0.5 : -1.2, y1 = chart == Chart::keps ? 2.0 : 1.2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double x = x0 + (x1 - x0) * i / (n - 1), y = y0 + (y1 - y0) * j / (n - 1);
      if (chart == Chart::keps) {
        const State<3> d = eval_chart_keps({x, y, 0.0}, c);
        out.push_back({x, y, d[0], d[1]});
      } else {
        const State<3> d = eval_chart_kw({0.0, x, y}, c);
        out.push_back({x, y, d[1], d[2]});
      }
    }
  }
  return out;
}

}  // namespace frontspeed
