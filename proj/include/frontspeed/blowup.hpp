#ifndef FRONTSPEED_BLOWUP_HPP_
#define FRONTSPEED_BLOWUP_HPP_

// Weighted blow-up of the nilpotent point (T, W) = (1, c) with weights
// (3, 2, 1) for (T~, W~, eps), in the rescaling chart K_eps and the
// directional chart K_W.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "frontspeed/dynsys.hpp"
#include "frontspeed/equilibria.hpp"
#include "frontspeed/integrator.hpp"

namespace frontspeed {

enum class Chart { keps, kw };

struct ChartPoint {
  Chart chart = Chart::keps;
  // K_eps: (T1, W1, r1).  K_W: (r2, eps2, T2).
  State<3> coords{};
};

struct BlowdownPoint {
  double T_tilde = 0.0;
  double W_tilde = 0.0;
  double eps = 0.0;
};

BlowdownPoint blowdown(const ChartPoint& pt);

// (T1, W1, r1) -> (r2, eps2, T2). Throws DomainError unless W1 > 0.
State<3> keps_to_kw(const State<3>& keps);
// (r2, eps2, T2) -> (T1, W1, r1). Throws DomainError unless eps2 > 0.
State<3> kw_to_keps(const State<3>& kw);

// First integral of the K_eps flow on the sphere r1 = 0.
double hamiltonian(double T1, double W1, double c);

// T1 <= 0 branch of the level set H = -c^6/48 through the saddle
// (0, c^2/2). Throws DomainError where the level set has no real branch.
double unstable_graph_keps(double W1, double c);

// Saddle of the K_eps field at fixed r1: (0, c^2 / (1 + sqrt(1 + r1^4 c^2))).
double keps_saddle_W1(double c, double r1);

struct KwFixedPoint {
  double eps2 = 0.0;
  double T2 = 0.0;
  bool attractor = false;
  Eigen2 eigen{};
};

// Fixed points of the r2 = 0 subsystem in the (eps2, T2) plane.
std::vector<KwFixedPoint> kw_fixed_points(double c);

// Jacobian of the r2 = 0 subsystem in (eps2, T2) coordinates.
Matrix2 kw_subsystem_jacobian(double eps2, double T2, double c, double step = 1e-6);
// Jacobian of the sphere flow in (T1, W1) coordinates.
Matrix2 keps_sphere_jacobian(double T1, double W1, double c, double step = 1e-6);

// Unstable manifold of the K_eps saddle at fixed r1, integrated until
// W1 = W1_stop.
Trajectory<3> shoot_keps_unstable(double c, double r1, double W1_stop,
                                  double delta = 1e-7, Tolerances tol = {1e-13, 1e-12});

// S2 at Sigma_out of the eps2 = 0 unstable manifold of (0, 0, -sqrt(2/3)).
double phi_kappa(double c, double kappa);

// Leading-order Sigma_in offset at eps = 0 from the exact level set:
// sqrt(3/8) (c^2/2) kappa^2.
double omega_leading(double c, double kappa);

struct TransitionEntry {
  double eps = 0.0;
  bool ok = false;
  std::string error;
  State<3> sigma_in{};   // (r2, eps2, T2)
  State<3> sigma_out{};
  double s2_in = 0.0;    // T2 + sqrt(2/3) at Sigma_in
  double s2_in0 = 0.0;   // same from the eps = 0 level set
  double d = 0.0;
  double ratio = 0.0;    // d / eps
  double invariant_drift = 0.0;  // max |r2 eps2 - eps| along the flight
  double transit_sigma = 0.0;
};

struct TransitionReport {
  double c = 0.0;
  double kappa = 0.0;
  double phi = 0.0;
  std::vector<TransitionEntry> entries;
  double ratio_spread = 0.0;  // max(d/eps) / min(d/eps)
  double order = 0.0;         // least-squares slope of log d against log eps
  bool pass = false;
};

struct TransitionOptions {
  Tolerances tol{1e-13, 1e-14};
  double delta = 1e-7;
  unsigned workers = 1;
};

// Tracks the unstable manifold from Sigma_in = {eps2 = kappa} to
// Sigma_out = {r2 = kappa} and measures its offset from phi(kappa).
TransitionReport verify_transition(double c, double kappa, std::span<const double> eps_list,
                                   const TransitionOptions& opt = {});

// Field samples (x, y, dx, dy) on a uniform n x n grid of the invariant
// sphere: K_eps uses (T1, W1) at r1 = 0, K_W uses (eps2, T2) at r2 = 0.
std::vector<std::array<double, 4>> portrait(Chart chart, double c, std::size_t n = 25);

}  // namespace frontspeed

#endif  // FRONTSPEED_BLOWUP_HPP_
