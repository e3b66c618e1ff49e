#ifndef FRONTSPEED_EQUILIBRIA_HPP_
#define FRONTSPEED_EQUILIBRIA_HPP_

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "frontspeed/dynsys.hpp"

namespace frontspeed {

using Matrix2 = std::array<std::array<double, 2>, 2>;

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

struct EigenPair {
  double re = 0.0;
  double im = 0.0;
  // Unit eigenvector; only meaningful for a real eigenvalue.
  std::array<double, 2> vector{};
};

struct Eigen2 {
  // Sorted by ascending real part.
  std::array<EigenPair, 2> pairs{};
  bool complex = false;
  bool nilpotent = false;
};

// Eigenvalues from the quadratic formula (cancellation-free form), and
// eigenvectors as the null space of A - lambda I.
Eigen2 eigen2(const Matrix2& a);

enum class Kind { saddle, stable_node, unstable_node, center, nonhyperbolic };

std::string_view to_string(Kind k);

// |Re lambda| < tol counts as on the imaginary axis. Complex pairs with
// nonzero real part are reported as nodes of the matching stability.
Kind classify(const Eigen2& eig, double tol = 1e-8);

struct Equilibrium {
  PlanarState location{};
  Matrix2 jacobian{};
  Eigen2 eigen{};
  Kind kind = Kind::nonhyperbolic;
};

// Root of h(w) = w - c + eps^2 w (2c - w) / 2 on the branch through w = c.
double w_minus(double c, double eps);
// The other root; diverges like 2/eps^2. Throws DomainError for eps = 0.
double w_plus(double c, double eps);
double h_quadratic(double w, double c, double eps);

// Central differences with a fixed step.
template <std::size_t N, class Field>
Matrix<N> numerical_jacobian(Field&& f, const State<N>& x, double step = 1e-6) {
  Matrix<N> j{};
  for (std::size_t col = 0; col < N; ++col) {
    State<N> xp = x, xm = x;
    xp[col] += step;
    xm[col] -= step;
    const State<N> fp = f(xp), fm = f(xm);
    for (std::size_t row = 0; row < N; ++row) {
      j[row][col] = (fp[row] - fm[row]) / (2 * step);
    }
  }
  return j;
}

Matrix2 desing_jacobian(PlanarState s, const Params& p, double step = 1e-6);
Matrix2 desing_jacobian_exact(PlanarState s, const Params& p);

// Fixed points of the desingularized field inside T in [-0.1, 1.1],
// W in [-1, c + 1]. For eps = 0 the T = 0 axis is a line of equilibria and
// only the origin is reported from it.
std::vector<Equilibrium> equilibria_desing(const Params& p);

Equilibrium make_equilibrium(PlanarState at, const Params& p);

// Eigenvalues of the numerical Jacobian at the origin, ascending.
std::pair<double, double> origin_eigenvalues(const Params& p);

}  // namespace frontspeed

#endif  // FRONTSPEED_EQUILIBRIA_HPP_
