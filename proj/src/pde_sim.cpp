#include "frontspeed/pde_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frontspeed {
namespace {

// Values below this are flushed to zero after each step so that the
// exactly-zero region ahead of the front can be skipped and denormals
// never appear.
constexpr double kFlush = 1e-100;

void fit_line(const std::vector<double>& t, const std::vector<double>& x, double& slope,
              double& rms) {
  const double n = static_cast<double>(t.size());
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i]; sx += x[i]; stt += t[i] * t[i]; stx += t[i] * x[i];
  }
  slope = (n * stx - st * sx) / (n * stt - st * st);
  const double icpt = (sx - slope * st) / n;
  double ss = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = x[i] - (icpt + slope * t[i]);
    ss += r * r;
  }
  rms = std::sqrt(ss / n);
}

}  // namespace

void Grid::validate() const {
  if (!(x_max > x_min)) throw DomainError("grid requires x_max > x_min");
  if (n_cells < 100) throw DomainError("grid requires at least 100 cells");
}

Grid Grid::with_spacing(double x_min, double x_max, double dx) {
  if (!(dx > 0.0)) throw DomainError("grid spacing must be positive");
  Grid g{x_min, x_max, static_cast<std::size_t>(std::llround((x_max - x_min) / dx))};
  g.validate();
  return g;
}

double burgers_flux(double ul, double ur) {
  auto f = [](double v) { return 0.5 * v * v; };
  if (ul <= ur) {
    if (ul > 0.0) return f(ul);
    if (ur < 0.0) return f(ur);
    return 0.0;
  }
  return (ul + ur) > 0.0 ? f(ul) : f(ur);
}

double stable_dt(const FieldState& s, const Grid& g) {
  const double dx = g.dx();
  double umax = 0.0;
  for (double v : s.u) umax = std::max(umax, std::abs(v));
  double dt = 0.5 * dx * dx;
  if (umax > 0.0) dt = std::min(dt, dx / umax);
  return 0.4 * dt;
}

double u_boundary_flux(const FieldState& s) {
  return burgers_flux(s.u.front(), s.u.front()) - burgers_flux(s.u.back(), s.u.back());
}

Stepper::Stepper(Grid grid, double rho, bool enforce_range)
    : grid_(grid), rho_(rho), enforce_range_(enforce_range) {
  grid_.validate();
  const std::size_t n = grid_.n_cells;
  stage_.T.assign(n, 0.0);
  stage_.u.assign(n, 0.0);
  k_.dT.assign(n, 0.0);
  k_.du.assign(n, 0.0);
  support_ = n + 1;  // unknown until the first call
}

void Stepper::eval(const FieldState& s, std::size_t end) {
  const std::size_t n = grid_.n_cells;
  const double dx = grid_.dx(), inv_dx = 1.0 / dx, inv_dx2 = inv_dx * inv_dx;
  const double* T = s.T.data();
  const double* u = s.u.data();
  // Left boundary face with a zero-gradient ghost cell.
  double FT_left = u[0] * T[0];
  double G_left = burgers_flux(u[0], u[0]);
  for (std::size_t i = 0; i < end; ++i) {
    const std::size_t r = i + 1 < n ? i + 1 : n - 1;
    const double Tl = i > 0 ? T[i - 1] : T[0];
    const double uf = 0.5 * (u[i] + u[r]);
    const double FT_right = uf > 0.0 ? uf * T[i] : uf * T[r];
    const double G_right = burgers_flux(u[i], u[r]);
    const double react = T[i] * (1.0 - T[i]);
    k_.dT[i] = (T[r] - 2.0 * T[i] + Tl) * inv_dx2 - (FT_right - FT_left) * inv_dx + react;
    k_.du[i] = -(G_right - G_left) * inv_dx + rho_ * react;
    FT_left = FT_right;
    G_left = G_right;
  }
}

void Stepper::locate_support(const FieldState& s) {
  const std::size_t n = grid_.n_cells;
  if (s.T.size() != n || s.u.size() != n) throw DomainError("state does not match the grid");
  if (support_ > n) {
    support_ = n;
    while (support_ > 0 && s.T[support_ - 1] == 0.0 && s.u[support_ - 1] == 0.0) --support_;
  }
}

double Stepper::stable_dt(const FieldState& s) {
  locate_support(s);
  const double dx = grid_.dx();
  double umax = 0.0;
  for (std::size_t i = 0; i < support_; ++i) umax = std::max(umax, std::abs(s.u[i]));
  double dt = 0.5 * dx * dx;
  if (umax > 0.0) dt = std::min(dt, dx / umax);
  return 0.4 * dt;
}

void Stepper::advance(FieldState& s, double dt) {
  const std::size_t n = grid_.n_cells;
  const double limit = stable_dt(s);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw CflError("time step " + std::to_string(dt) + " exceeds the stability bound " +
                   std::to_string(limit));
  }

  // Stage 1: s1 = s + dt L(s).
  std::size_t end = std::min(n, support_ + 1);
  eval(s, end);
  for (std::size_t i = 0; i < end; ++i) {
    stage_.T[i] = s.T[i] + dt * k_.dT[i];
    stage_.u[i] = s.u[i] + dt * k_.du[i];
  }
  // Stage 2: s2 = 3/4 s + 1/4 (s1 + dt L(s1)).
  end = std::min(n, support_ + 2);
  eval(stage_, end);
  for (std::size_t i = 0; i < end; ++i) {
    stage_.T[i] = 0.75 * s.T[i] + 0.25 * (stage_.T[i] + dt * k_.dT[i]);
    stage_.u[i] = 0.75 * s.u[i] + 0.25 * (stage_.u[i] + dt * k_.du[i]);
  }
  // Stage 3: s' = 1/3 s + 2/3 (s2 + dt L(s2)).
  end = std::min(n, support_ + 3);
  eval(stage_, end);
  for (std::size_t i = 0; i < end; ++i) {
    double T = s.T[i] / 3.0 + 2.0 / 3.0 * (stage_.T[i] + dt * k_.dT[i]);
    double u = s.u[i] / 3.0 + 2.0 / 3.0 * (stage_.u[i] + dt * k_.du[i]);
    if (std::abs(T) < kFlush) T = 0.0;
    if (std::abs(u) < kFlush) u = 0.0;
    if (!std::isfinite(T) || !std::isfinite(u)) {
      throw StateInvariantError("non-finite state at x = " + std::to_string(grid_.center(i)));
    }
    if (enforce_range_ && !(T >= -0.01 && T <= 1.01)) {
      throw StateInvariantError("T = " + std::to_string(T) + " left [-0.01, 1.01] at x = " +
                                std::to_string(grid_.center(i)));
    }
    t_min_ = std::min(t_min_, T);
    t_max_ = std::max(t_max_, T);
    s.T[i] = T;
    s.u[i] = u;
  }
  support_ = end;
  while (support_ > 0 && s.T[support_ - 1] == 0.0 && s.u[support_ - 1] == 0.0) --support_;
  s.time += dt;
}

FieldDerivative rhs(const FieldState& s, const Grid& g, double rho) {
  g.validate();
  const std::size_t n = g.n_cells;
  FieldDerivative d{std::vector<double>(n), std::vector<double>(n)};
  const double dx = g.dx(), inv_dx = 1.0 / dx, inv_dx2 = inv_dx * inv_dx;
  double FT_left = s.u[0] * s.T[0];
  double G_left = burgers_flux(s.u[0], s.u[0]);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = i + 1 < n ? i + 1 : n - 1;
    const double Tl = i > 0 ? s.T[i - 1] : s.T[0];
    const double uf = 0.5 * (s.u[i] + s.u[r]);
    const double FT_right = uf > 0.0 ? uf * s.T[i] : uf * s.T[r];
    const double G_right = burgers_flux(s.u[i], s.u[r]);
    const double react = s.T[i] * (1.0 - s.T[i]);
    d.dT[i] = (s.T[r] - 2.0 * s.T[i] + Tl) * inv_dx2 - (FT_right - FT_left) * inv_dx + react;
    d.du[i] = -(G_right - G_left) * inv_dx + rho * react;
    FT_left = FT_right;
    G_left = G_right;
  }
  return d;
}

void step(FieldState& s, const Grid& g, double rho, double dt) {
  Stepper st(g, rho);
  st.advance(s, dt);
}

FieldState initial_state(const Grid& g, const InitialCondition& ic) {
  g.validate();
  if (!(ic.right > ic.left)) throw DomainError("initial support must have positive length");
  FieldState s;
  s.T.assign(g.n_cells, 0.0);
  s.u.assign(g.n_cells, 0.0);
  const double dx = g.dx();
  for (std::size_t i = 0; i < g.n_cells; ++i) {
    const double x = g.center(i);
    double v = 0.0;
    if (ic.shape == IcShape::indicator) {
      // Edges ramp linearly over one cell on either side.
      const double up = std::clamp((x - ic.left) / (2 * dx) + 0.5, 0.0, 1.0);
      const double down = std::clamp((ic.right - x) / (2 * dx) + 0.5, 0.0, 1.0);
      v = ic.left <= g.x_min ? down : up * down;
    } else {
      const double mid = 0.5 * (ic.left + ic.right), half = 0.5 * (ic.right - ic.left);
      v = std::max(0.0, 1.0 - std::abs(x - mid) / half);
    }
    s.T[i] = v;
  }
  return s;
}

double front_position(const FieldState& s, const Grid& g) {
  for (std::size_t i = s.T.size(); i-- > 0;) {
    if (s.T[i] >= 0.5) {
      if (i + 1 == s.T.size()) return g.center(i);
      const double a = s.T[i], b = s.T[i + 1];
      return g.center(i) + (a - 0.5) / (a - b) * g.dx();
    }
  }
  return std::nan("");
}

FrontTrack measure_speed(const PdeConfig& cfg) {
  cfg.grid.validate();
  if (!(cfg.rho > 0.0)) throw DomainError("rho must be positive");
  if (!(cfg.t_max > 0.0) || !(cfg.output_dt > 0.0)) {
    throw DomainError("t_max and output interval must be positive");
  }
  const Grid& g = cfg.grid;
  FieldState s = initial_state(g, cfg.ic);
  Stepper stepper(g, cfg.rho, false);

  const auto n_out = static_cast<std::size_t>(std::floor(cfg.t_max / cfg.output_dt + 1e-9));
  std::vector<double> outputs;
  for (std::size_t k = 0; k <= n_out; ++k) outputs.push_back(k * cfg.output_dt);
  std::vector<double> snaps = cfg.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::vector<double> stops = outputs;
  stops.insert(stops.end(), snaps.begin(), snaps.end());
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double margin = 0.05 * (g.x_max - g.x_min);
  FrontTrack track;
  std::size_t next_out = 0, next_snap = 0;
  for (double stop : stops) {
    if (stop > cfg.t_max + 1e-12 || stop < 0.0) continue;
    while (stop - s.time > 1e-12 * std::max(1.0, stop)) {
      stepper.advance(s, std::min(stepper.stable_dt(s), stop - s.time));
    }
    s.time = stop;
    if (next_out < outputs.size() && outputs[next_out] == stop) {
      const double xf = front_position(s, g);
      if (std::isfinite(xf) && xf > g.x_max - margin) {
        throw FrontAtBoundaryError("front reached the right boundary at t = " +
                                   std::to_string(stop) + "; enlarge the domain");
      }
      track.time.push_back(stop);
      track.position.push_back(xf);
      ++next_out;
    }
    while (next_snap < snaps.size() && snaps[next_snap] <= stop) {
      if (snaps[next_snap] == stop) {
        Snapshot sn;
        sn.time = stop;
        for (std::size_t i = 0; i < g.n_cells; ++i) sn.x.push_back(g.center(i));
        sn.T = s.T;
        sn.u = s.u;
        track.snapshots.push_back(std::move(sn));
      }
      ++next_snap;
    }
  }

  std::vector<double> ft, fx;
  for (std::size_t i = 0; i < track.time.size(); ++i) {
    if (track.time[i] >= 0.5 * cfg.t_max && std::isfinite(track.position[i])) {
      ft.push_back(track.time[i]);
      fx.push_back(track.position[i]);
    }
  }
  if (ft.size() < 2) throw IntegrationError("too few front positions for a speed fit");
  fit_line(ft, fx, track.speed, track.fit_residual);
  track.T_min = std::min(stepper.t_min(), *std::min_element(s.T.begin(), s.T.end()));
  track.T_max = std::max(stepper.t_max(), *std::max_element(s.T.begin(), s.T.end()));
  track.in_range = track.T_min >= -0.01 && track.T_max <= 1.01;
  track.ratio = track.speed / std::cbrt(cfg.rho);
  return track;
}

}  // namespace frontspeed
