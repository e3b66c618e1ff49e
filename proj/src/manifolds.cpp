#include "frontspeed/manifolds.hpp"

#include <cmath>
#include <string>

#include "frontspeed/equilibria.hpp"
#include "frontspeed/singular_limit.hpp"

namespace frontspeed {
namespace {

void check_options(const ShootOptions& opt) {
  if (!(opt.delta >= 1e-9 && opt.delta <= 1e-3)) {
    throw DomainError("seed offset delta must lie in [1e-9, 1e-3]");
  }
  if (!(opt.section_T > 0.0 && opt.section_T < 1.0)) {
    throw DomainError("section threshold must lie in (0, 1)");
  }
  if (!(opt.tol.abs > 0.0 && opt.tol.rel > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
}

ShootResult run_shot(Side side, const Params& p, const ShootOptions& opt,
                     PlanarState seed, double rate, double t_end, Crossing dir) {
  auto field = [&p](const State<2>& x) {
    return eval_desing_tw(PlanarState::from(x), p).as_array();
  };
  const Section section{0, opt.section_T, dir, true, 1};
  IntegrateOptions<2> io;
  io.tol = opt.tol;
  io.box = front_box(p.c);
  io.max_steps = opt.max_steps;
  io.record = opt.record;

  ShootResult r;
  r.delta = opt.delta;
  r.eigenvalue = rate;
  r.seed = seed;
  r.orbit = integrate<2>(field, seed.as_array(), 0.0, t_end, std::span(&section, 1), io);
  if (r.orbit.status != Status::event_stopped) {
    throw ShootingError(side, ShootingError::Reason::no_crossing,
                        std::string(to_string(side)) + " manifold did not reach T = " +
                            std::to_string(opt.section_T) + " (" +
                            std::string(to_string(r.orbit.status)) + ")");
  }
  const State<2>& hit = r.orbit.events.back().state;
  r.section_T = hit[0];
  r.section_W = hit[1];
  r.converged = std::abs(r.section_T - opt.section_T) < 1e-10;
  return r;
}

}  // namespace

std::string_view to_string(Side s) {
  return s == Side::unstable ? "unstable" : "strong-stable";
}

Box<2> front_box(double c) { return {{-0.1, -1.0}, {1.1, c + 1.0}}; }

ShootResult shoot_unstable(const Params& p, const ShootOptions& opt) {
  p.validate();
  check_options(opt);
  if (!(p.eps > 0.0)) {
    throw DomainError("shoot_unstable requires eps > 0; use g_u at eps = 0");
  }
  const PlanarState saddle{1.0, w_minus(p.c, p.eps)};
  const Eigen2 eig = eigen2(desing_jacobian(saddle, p));
  const double rate = eig.pairs[1].re;
  if (eig.complex || !(rate >= 1e-12)) {
    throw ShootingError(Side::unstable, ShootingError::Reason::degenerate_eigenvector,
                        "saddle has no usable unstable eigenvalue");
  }
  auto v = eig.pairs[1].vector;
  if (v[0] > 0.0) v = {-v[0], -v[1]};
  const PlanarState seed{saddle.T + opt.delta * v[0], saddle.W + opt.delta * v[1]};
  return run_shot(Side::unstable, p, opt, seed, rate, 50.0 / rate + 1000.0, Crossing::falling);
}

ShootResult shoot_strong_stable(const Params& p, const ShootOptions& opt) {
  p.validate();
  check_options(opt);
  const Eigen2 eig = eigen2(desing_jacobian({0.0, 0.0}, p));
  if (eig.complex || std::abs(eig.pairs[1].re - eig.pairs[0].re) < 1e-10) {
    throw ShootingError(Side::strong_stable, ShootingError::Reason::eigenvalue_collision,
                        "origin eigenvalues collide; no strong-stable direction");
  }
  const double rate = eig.pairs[0].re;
  auto v = eig.pairs[0].vector;
  if (v[0] < 0.0) v = {-v[0], -v[1]};
  const PlanarState seed{opt.delta * v[0], opt.delta * v[1]};
  return run_shot(Side::strong_stable, p, opt, seed, rate, -(50.0 / std::abs(rate) + 1000.0),
                  Crossing::rising);
}

double mismatch(const Params& p, const ShootOptions& opt) {
  p.validate();
  if (p.eps == 0.0) {
    check_options(opt);
    return phi0_at(p.c, opt.section_T);
  }
  ShootOptions o = opt;
  o.record = false;
  const double hs = shoot_strong_stable(p, o).section_W;
  const double hu = shoot_unstable(p, o).section_W;
  return hs - hu;
}

}  // namespace frontspeed
