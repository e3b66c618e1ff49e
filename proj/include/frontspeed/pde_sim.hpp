#ifndef FRONTSPEED_PDE_SIM_HPP_
#define FRONTSPEED_PDE_SIM_HPP_

// Method-of-lines solver for the inviscid system
//   T_t = T_xx - (u T)_x + T (1 - T)
//   u_t = -(u^2 / 2)_x + rho T (1 - T)
// with first-order upwind fluxes, central diffusion, zero-gradient
// boundaries and SSP-RK3 time stepping.

#include <cstddef>
#include <vector>

#include "frontspeed/errors.hpp"

namespace frontspeed {

class CflError : public Error {
 public:
  using Error::Error;
};

class StateInvariantError : public Error {
 public:
  using Error::Error;
};

class FrontAtBoundaryError : public Error {
 public:
  using Error::Error;
};

struct Grid {
  double x_min = 0.0;
  double x_max = 300.0;
  std::size_t n_cells = 15000;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  double center(std::size_t i) const { return x_min + (static_cast<double>(i) + 0.5) * dx(); }
  void validate() const;

  static Grid with_spacing(double x_min, double x_max, double dx);
};

struct FieldState {
  std::vector<double> T;
  std::vector<double> u;
  double time = 0.0;
};

struct FieldDerivative {
  std::vector<double> dT;
  std::vector<double> du;
};

// Godunov flux of u^2/2, the upwind flux for the convex Burgers flux.
double burgers_flux(double ul, double ur);

FieldDerivative rhs(const FieldState& s, const Grid& g, double rho);

// 0.4 min(dx^2 / 2, dx / max|u|).
double stable_dt(const FieldState& s, const Grid& g);

// Net boundary inflow of integral u dx, (G_left - G_right).
double u_boundary_flux(const FieldState& s);

class Stepper {
 public:
  // With enforce_range false only finiteness is checked, and the
  // extremes of T are tracked instead.
  Stepper(Grid grid, double rho, bool enforce_range = true);

  // Advances by dt; throws CflError if dt exceeds stable_dt and
  // StateInvariantError if T leaves [-0.01, 1.01] or u is not finite.
  void advance(FieldState& s, double dt);

  // Same bound as the free stable_dt, scanning only the nonzero region.
  double stable_dt(const FieldState& s);

  const Grid& grid() const { return grid_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

 private:
  void eval(const FieldState& s, std::size_t end);
  void locate_support(const FieldState& s);

  Grid grid_;
  double rho_;
  bool enforce_range_;
  double t_min_ = 0.0, t_max_ = 0.0;
  std::size_t support_ = 0;  // cells at or beyond support_ are exactly zero
  FieldState stage_;
  FieldDerivative k_;
};

void step(FieldState& s, const Grid& g, double rho, double dt);

enum class IcShape { indicator, tent };

struct InitialCondition {
  IcShape shape = IcShape::indicator;
  double left = 0.0;
  double right = 2.0;
};

FieldState initial_state(const Grid& g, const InitialCondition& ic);

struct PdeConfig {
  double rho = 125.0;
  Grid grid{};
  double t_max = 30.0;
  double output_dt = 0.5;
  InitialCondition ic{};
  std::vector<double> snapshot_times;
};

struct Snapshot {
  double time = 0.0;
  std::vector<double> x;
  std::vector<double> T;
  std::vector<double> u;
};

struct FrontTrack {
  std::vector<double> time;
  std::vector<double> position;
  double speed = 0.0;
  double fit_residual = 0.0;  // RMS deviation from the fitted line
  double ratio = 0.0;         // speed / rho^(1/3)
  double T_min = 0.0;         // extremes of T over the whole run
  double T_max = 0.0;
  bool in_range = true;       // T stayed inside [-0.01, 1.01]
  std::vector<Snapshot> snapshots;
};

// Rightmost x with T >= 1/2, linearly interpolated between cell centers.
double front_position(const FieldState& s, const Grid& g);

// Least-squares front speed over the final half of the record. Throws
// FrontAtBoundaryError when the front comes within 5% of the right end.
// The state behind the front is unstable without viscosity, so T is
// allowed to leave [0, 1] here; the excursion is reported in the track.
FrontTrack measure_speed(const PdeConfig& cfg);

}  // namespace frontspeed

#endif  // FRONTSPEED_PDE_SIM_HPP_
