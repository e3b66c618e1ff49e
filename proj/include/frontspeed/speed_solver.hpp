#ifndef FRONTSPEED_SPEED_SOLVER_HPP_
#define FRONTSPEED_SPEED_SOLVER_HPP_

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frontspeed/manifolds.hpp"

namespace frontspeed {

struct Bracket {
  double lo = 1.0;
  double hi = 1.8;
};

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Brent's method (bisection, secant and inverse quadratic interpolation).
// Throws NoSignChangeError when f(lo) and f(hi) share a sign.
RootResult brent_root(const std::function<double(double)>& f, Bracket bracket,
                      double tol_x, int max_iter = 200);

struct SpeedOptions {
  Bracket bracket{};
  double tol_c = 1e-10;
  double tol_phi = 1e-9;
  ShootOptions shoot{};
  int max_iter = 200;
};

struct SpeedResult {
  double eps = 0.0;
  double c_star = 0.0;
  double rho = std::numeric_limits<double>::infinity();
  double ctilde_star = std::numeric_limits<double>::infinity();
  double residual = 0.0;
  Bracket bracket{};
  int iterations = 0;

  // ctilde / rho^(1/3); equals c_star up to rounding.
  double ratio() const;
};

SpeedResult solve_speed(double eps, const SpeedOptions& opt = {});

// (rho, ctilde) = (eps^-3, c_star / eps). Throws DomainError for eps = 0.
std::pair<double, double> ctilde_from(const SpeedResult& speed);

// W-component of the stable state behind the front in the unscaled
// variables, ctilde + rho - sqrt(ctilde^2 + rho^2), cancellation-free.
double stable_state_u(double ctilde, double rho);

struct SweepEntry {
  double eps = 0.0;
  std::optional<SpeedResult> result;
  std::string error;
  bool no_root = false;  // the failure was a bracket without sign change
};

struct SweepReport {
  std::vector<SweepEntry> entries;  // in input order
  // Least-squares slope of log|c*(eps) - c*(0)| against log eps.
  double order = std::numeric_limits<double>::quiet_NaN();
  // Richardson extrapolation of the two smallest eps with the fitted order.
  double extrapolated = std::numeric_limits<double>::quiet_NaN();
};

// eps_list must be positive and strictly descending.
SweepReport sweep(std::span<const double> eps_list, const SpeedOptions& opt = {},
                  unsigned workers = 1);

struct FrontSample {
  double X = 0.0;   // scaled traveling-wave coordinate
  double tau = 0.0; // desingularized time
  double T = 0.0;
  double W = 0.0;
};

struct FrontProfile {
  std::vector<FrontSample> samples;
  double decay_rate = 0.0;    // of T in tau on the tail T < tail_T
  double decay_rate_X = 0.0;  // of T in X on the same tail
  bool monotone = false;
};

struct ProfileOptions {
  double x_span = std::numeric_limits<double>::infinity();
  double tail_T = 1e-3;
  double floor_T = 1e-9;
  ShootOptions shoot{};
};

// Integrates the connection from the unstable seed of (1, w_-(eps)) toward
// the origin, carrying X along with X' = c - W.
FrontProfile front_profile(double eps, double c, const ProfileOptions& opt = {});

}  // namespace frontspeed

#endif  // FRONTSPEED_SPEED_SOLVER_HPP_
