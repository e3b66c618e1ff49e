#ifndef FRONTSPEED_MANIFOLDS_HPP_
#define FRONTSPEED_MANIFOLDS_HPP_

#include <string_view>

#include "frontspeed/dynsys.hpp"
#include "frontspeed/errors.hpp"
#include "frontspeed/integrator.hpp"

namespace frontspeed {

enum class Side { unstable, strong_stable };

std::string_view to_string(Side s);

class ShootingError : public IntegrationError {
 public:
  enum class Reason { no_crossing, degenerate_eigenvector, eigenvalue_collision };

  ShootingError(Side side, Reason reason, const std::string& what)
      : IntegrationError(what), side_(side), reason_(reason) {}

  Side side() const { return side_; }
  Reason reason() const { return reason_; }

 private:
  Side side_;
  Reason reason_;
};

struct ShootOptions {
  double delta = 1e-6;      // linear seed offset along the eigenvector
  double section_T = 0.5;   // evaluation section T = section_T
  Tolerances tol{1e-12, 1e-10};
  std::size_t max_steps = 10'000'000;
  bool record = true;
};

struct ShootResult {
  double section_W = 0.0;
  double section_T = 0.0;
  double delta = 0.0;
  double eigenvalue = 0.0;  // rate of the seeding direction
  PlanarState seed{};
  Trajectory<2> orbit;
  bool converged = false;
};

// Front-orbit domain box T in [-0.1, 1.1], W in [-1, c + 1].
Box<2> front_box(double c);

// Unstable manifold of the saddle (1, w_-(eps)), integrated forward to the
// section. Requires eps > 0.
ShootResult shoot_unstable(const Params& p, const ShootOptions& opt = {});

// Strong-stable manifold of the origin, integrated backward to the section.
ShootResult shoot_strong_stable(const Params& p, const ShootOptions& opt = {});

// h_s - h_u at the section; closed forms at eps = 0.
double mismatch(const Params& p, const ShootOptions& opt = {});

}  // namespace frontspeed

#endif  // FRONTSPEED_MANIFOLDS_HPP_
