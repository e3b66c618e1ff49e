#ifndef FRONTSPEED_DYNSYS_HPP_
#define FRONTSPEED_DYNSYS_HPP_

#include <array>
#include <cstddef>

namespace frontspeed {

template <std::size_t N>
using State = std::array<double, N>;

// Wavespeed c and singular parameter eps of the scaled traveling-wave system.
struct Params {
  double c = 1.0;
  double eps = 0.0;

  // rho = eps^-3; only meaningful for eps > 0.
  double rho() const;
  // Throws DomainError unless c > 0 and eps >= 0.
  void validate() const;
};

struct PlanarState {
  double T = 0.0;
  double W = 0.0;

  State<2> as_array() const { return {T, W}; }
  static PlanarState from(const State<2>& s) { return {s[0], s[1]}; }
};

// Scaled traveling-wave system in the original X variable; singular on W = c.
// Throws SingularInputError when |W - c| < 1e-14.
PlanarState eval_scaled_tw(PlanarState s, const Params& p);

// The same system multiplied by (c - W), which removes the singular line.
PlanarState eval_desing_tw(PlanarState s, const Params& p);

// eps = 0 limit of eval_desing_tw.
PlanarState eval_reduced(PlanarState s, double c);

// Rescaling chart, coordinates (T1, W1, r1), after division by r1.
// At r1 = 0 this is the Hamiltonian flow on the blown-up sphere.
State<3> eval_chart_keps(const State<3>& s, double c);

// Directional chart, coordinates (r2, eps2, T2), after division by r2.
State<3> eval_chart_kw(const State<3>& s, double c);

// Shifted three-dimensional system in (T~, W~, eps) with eps' = 0.
State<3> eval_shifted(const State<3>& s, double c);

}  // namespace frontspeed

#endif  // FRONTSPEED_DYNSYS_HPP_
