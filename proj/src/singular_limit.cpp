#include "frontspeed/singular_limit.hpp"

#include <cmath>

#include "frontspeed/errors.hpp"

namespace frontspeed {
namespace {

// std::cbrt is the real cube root, sign(x) |x|^(1/3).
double radicand(double T) { return 3 * T - 1.5 * T * T; }

}  // namespace

double k_origin(double c) { return -c * c * c / 3.0; }

double curve_residual(double T, double W, double c, double k) {
  const double gap = W - c;
  return gap * gap * gap / 3.0 - T + 0.5 * T * T - k;
}

double g_s(double c, double T) { return c + std::cbrt(radicand(T) - c * c * c); }

double g_u(double c, double T) { return c + std::cbrt(radicand(T) - 1.5); }

double c_star_0() { return std::cbrt(1.5); }

double phi0_at(double c, double T) {
  return std::cbrt(radicand(T) - c * c * c) - std::cbrt(radicand(T) - 1.5);
}

double phi0(double c) { return phi0_at(c, 0.5); }

double dgs_dc(double c, double T) {
  const double x = radicand(T) - c * c * c;
  if (x == 0.0) throw DomainError("d/dc g_s is singular where 3T - 3T^2/2 = c^3");
  const double r = std::cbrt(x);
  return 1.0 - c * c / (r * r);
}

// The g_u radicand does not involve c.
double dgu_dc(double /*c*/, double /*T*/) { return 1.0; }

double dphi0_dc(double c, double T) {
  if (!(T > 0.0)) throw DomainError("dphi0_dc requires T > 0");
  const double x = radicand(T) - c * c * c;
  if (x == 0.0) throw DomainError("dphi0_dc is singular where 3T - 3T^2/2 = c^3");
  const double r = std::cbrt(x);
  return -c * c / (r * r);
}

double dphi0_dc_full(double c, double T) {
  if (!(T > 0.0)) throw DomainError("dphi0_dc_full requires T > 0");
  return dgs_dc(c, T) - dgu_dc(c, T);
}

}  // namespace frontspeed
