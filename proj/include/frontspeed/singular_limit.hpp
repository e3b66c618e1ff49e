#ifndef FRONTSPEED_SINGULAR_LIMIT_HPP_
#define FRONTSPEED_SINGULAR_LIMIT_HPP_

// Closed-form objects of the eps = 0 reduced system. Its orbits lie on the
// level curves (W - c)^3 / 3 - T + T^2 / 2 = k.

namespace frontspeed {

// k of the curve through the origin, -c^3/3.
double k_origin(double c);
// k of the curve through the nilpotent point (1, c).
inline constexpr double k_nilpotent = -0.5;

double curve_residual(double T, double W, double c, double k);

// W on the curve through the origin.
double g_s(double c, double T);
// W on the curve through (1, c).
double g_u(double c, double T);

// Singular speed, the cube root of 3/2.
double c_star_0();

// g_s(c, 1/2) - g_u(c, 1/2).
double phi0(double c);
// g_s(c, T) - g_u(c, T).
double phi0_at(double c, double T);

// -c^2 / (3T - 3T^2/2 - c^3)^(2/3), the closed-form c-derivative of the g_s
// term. Throws DomainError where the radicand vanishes or T <= 0.
double dphi0_dc(double c, double T);
// d/dc g_s - d/dc g_u, each term differentiated on its own.
double dgs_dc(double c, double T);
double dgu_dc(double c, double T);
double dphi0_dc_full(double c, double T);

}  // namespace frontspeed

#endif  // FRONTSPEED_SINGULAR_LIMIT_HPP_
