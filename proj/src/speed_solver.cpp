#include "frontspeed/speed_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "frontspeed/equilibria.hpp"
#include "frontspeed/singular_limit.hpp"

namespace frontspeed {

RootResult brent_root(const std::function<double(double)>& f, Bracket bracket,
                      double tol_x, int max_iter) {
  double a = bracket.lo, b = bracket.hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw NoSignChangeError("no sign change on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "]");
  }
  double c = b, fc = fb, d = b - a, e = d;
  for (int iter = 1; iter <= max_iter; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol_x;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return {b, fb, iter};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    fb = f(b);
  }
  return {b, fb, max_iter};
}

double SpeedResult::ratio() const {
  if (eps == 0.0) return c_star;
  return ctilde_star / std::cbrt(rho);
}

SpeedResult solve_speed(double eps, const SpeedOptions& opt) {
  if (!(eps >= 0.0)) throw DomainError("eps must be non-negative");
  if (!(opt.bracket.lo < opt.bracket.hi) || !(opt.bracket.lo > 0.0)) {
    throw DomainError("bracket must satisfy 0 < lo < hi");
  }
  if (!(opt.tol_c > 0.0)) throw DomainError("tolerance must be positive");
  auto phi = [&](double c) { return mismatch({c, eps}, opt.shoot); };
  const RootResult root = brent_root(phi, opt.bracket, opt.tol_c, opt.max_iter);

  SpeedResult r;
  r.eps = eps;
  r.c_star = root.x;
  r.residual = std::abs(root.fx);
  r.bracket = opt.bracket;
  r.iterations = root.iterations;
  if (eps > 0.0) {
    std::tie(r.rho, r.ctilde_star) = ctilde_from(r);
  }
  return r;
}

std::pair<double, double> ctilde_from(const SpeedResult& speed) {
  if (!(speed.eps > 0.0)) throw DomainError("the unscaled speed requires eps > 0");
  const double e = speed.eps;
  return {1.0 / (e * e * e), speed.c_star / e};
}

double stable_state_u(double ctilde, double rho) {
  return ctilde - ctilde * ctilde / (rho + std::hypot(ctilde, rho));
}

SweepReport sweep(std::span<const double> eps_list, const SpeedOptions& opt,
                  unsigned workers) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw DomainError("sweep entries must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw DomainError("sweep entries must be sorted descending");
    }
  }
  SweepReport rep;
  rep.entries.resize(eps_list.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < eps_list.size(); i = next++) {
      SweepEntry& entry = rep.entries[i];
      entry.eps = eps_list[i];
      try {
        entry.result = solve_speed(eps_list[i], opt);
      } catch (const NoSignChangeError& ex) {
        entry.error = ex.what();
        entry.no_root = true;
      } catch (const std::exception& ex) {
        entry.error = ex.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(eps_list.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  std::vector<std::pair<double, double>> pts;  // (eps, c_star)
  for (const auto& e : rep.entries) {
    if (e.result) pts.emplace_back(e.eps, e.result->c_star);
  }
  const double c0 = c_star_0();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& [eps, c] : pts) {
    const double err = std::abs(c - c0);
    if (!(err > 0.0)) continue;
    const double x = std::log(eps), y = std::log(err);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    rep.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  if (pts.size() >= 2 && std::isfinite(rep.order)) {
    const auto [ea, ca] = pts[pts.size() - 2];
    const auto [eb, cb] = pts[pts.size() - 1];
    rep.extrapolated = cb + (cb - ca) / (std::pow(ea / eb, rep.order) - 1.0);
  }
  return rep;
}

FrontProfile front_profile(double eps, double c, const ProfileOptions& opt) {
  const Params p{c, eps};
  p.validate();
  if (!(eps > 0.0)) throw DomainError("front_profile requires eps > 0");
  // The seed is taken from the unstable shot so both agree bit for bit.
  ShootOptions so = opt.shoot;
  so.record = false;
  const ShootResult shot = shoot_unstable(p, so);

  auto field = [&p](const State<3>& x) {
    const PlanarState d = eval_desing_tw({x[0], x[1]}, p);
    return State<3>{d.T, d.W, p.c - x[1]};
  };
  std::vector<Section> sections{{0, opt.floor_T, Crossing::falling, true, 1}};
  if (std::isfinite(opt.x_span)) sections.push_back({2, opt.x_span, Crossing::rising, true, 2});
  IntegrateOptions<3> io;
  io.tol = opt.shoot.tol;
  // The tail is resolved in relative terms down to floor_T.
  io.tol.abs = std::min(io.tol.abs, 1e-4 * opt.floor_T);
  io.max_steps = opt.shoot.max_steps;
  const Box<2> b2 = front_box(c);
  io.box = Box<3>{{b2.lo[0], b2.lo[1], -1e300}, {b2.hi[0], b2.hi[1], 1e300}};
  const State<3> x0{shot.seed.T, shot.seed.W, 0.0};
  const Trajectory<3> traj =
      integrate<3>(field, x0, 0.0, 50.0 / shot.eigenvalue + 1e4, sections, io);
  if (traj.status != Status::event_stopped) {
    throw ShootingError(Side::unstable, ShootingError::Reason::no_crossing,
                        "front orbit did not reach the tail (" +
                            std::string(to_string(traj.status)) + ")");
  }

  FrontProfile prof;
  prof.samples.reserve(traj.t.size());
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    prof.samples.push_back({traj.x[k][2], traj.t[k], traj.x[k][0], traj.x[k][1]});
  }
  prof.monotone = std::adjacent_find(prof.samples.begin(), prof.samples.end(),
                                     [](const FrontSample& a, const FrontSample& b) {
                                       return !(b.T < a.T);
                                     }) == prof.samples.end();

  auto fit = [&](auto abscissa) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& s : prof.samples) {
      if (!(s.T < opt.tail_T && s.T > 0.0)) continue;
      const double x = abscissa(s), y = std::log(s.T);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
      ++n;
    }
    if (n < 3) return std::numeric_limits<double>::quiet_NaN();
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  prof.decay_rate = fit([](const FrontSample& s) { return s.tau; });
  prof.decay_rate_X = fit([](const FrontSample& s) { return s.X; });
  return prof;
}

}  // namespace frontspeed
