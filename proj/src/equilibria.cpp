#include "frontspeed/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "frontspeed/errors.hpp"

namespace frontspeed {
namespace {

std::array<double, 2> null_vector(const Matrix2& a, double lambda) {
  const double r0x = a[0][0] - lambda, r0y = a[0][1];
  const double r1x = a[1][0], r1y = a[1][1] - lambda;
  const double n0 = std::hypot(r0x, r0y), n1 = std::hypot(r1x, r1y);
  std::array<double, 2> v{};
  if (n0 == 0.0 && n1 == 0.0) {
    v = {1.0, 0.0};
  } else if (n0 >= n1) {
    v = {-r0y, r0x};
  } else {
    v = {-r1y, r1x};
  }
  const double n = std::hypot(v[0], v[1]);
  v[0] /= n;
  v[1] /= n;
  // Deterministic sign: largest component positive.
  if ((std::abs(v[0]) >= std::abs(v[1]) ? v[0] : v[1]) < 0.0) {
    v[0] = -v[0];
    v[1] = -v[1];
  }
  return v;
}

}  // namespace

Eigen2 eigen2(const Matrix2& a) {
  const double tr = a[0][0] + a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double half = 0.5 * tr;
  const double disc = half * half - det;
  Eigen2 out;
  if (disc < 0.0) {
    const double w = std::sqrt(-disc);
    out.complex = true;
    out.pairs[0] = {half, -w, {}};
    out.pairs[1] = {half, w, {}};
    return out;
  }
  const double root = std::sqrt(disc);
  const double q = half + std::copysign(root, half);
  double l1 = q;
  double l2 = q != 0.0 ? det / q : 0.0;
  if (l1 > l2) std::swap(l1, l2);
  out.pairs[0] = {l1, 0.0, null_vector(a, l1)};
  out.pairs[1] = {l2, 0.0, null_vector(a, l2)};
  if (l1 == l2 && l1 != 0.0) {
    // Scalar multiple of the identity: every direction is an eigenvector.
    if (a[0][1] == 0.0 && a[1][0] == 0.0) out.pairs[1].vector = {0.0, 1.0};
  }
  const bool zero_spectrum = tr == 0.0 && det == 0.0;
  const bool nonzero = std::any_of(a.begin(), a.end(), [](const auto& row) {
    return row[0] != 0.0 || row[1] != 0.0;
  });
  out.nilpotent = zero_spectrum && nonzero;
  if (zero_spectrum && !nonzero) out.pairs[1].vector = {0.0, 1.0};
  return out;
}

std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::saddle: return "saddle";
    case Kind::stable_node: return "stable-node";
    case Kind::unstable_node: return "unstable-node";
    case Kind::center: return "center";
    case Kind::nonhyperbolic: return "nonhyperbolic";
  }
  return "unknown";
}

Kind classify(const Eigen2& eig, double tol) {
  const double a = eig.pairs[0].re, b = eig.pairs[1].re;
  if (eig.complex) {
    if (std::abs(a) < tol) return Kind::center;
    return a < 0.0 ? Kind::stable_node : Kind::unstable_node;
  }
  if (std::abs(a) < tol || std::abs(b) < tol) return Kind::nonhyperbolic;
  if (a < 0.0 && b > 0.0) return Kind::saddle;
  return b < 0.0 ? Kind::stable_node : Kind::unstable_node;
}

double h_quadratic(double w, double c, double eps) {
  return w - c + 0.5 * eps * eps * w * (2 * c - w);
}

double w_minus(double c, double eps) {
  const double e2 = eps * eps;
  return c - e2 * c * c / (1.0 + std::sqrt(1.0 + e2 * e2 * c * c));
}

double w_plus(double c, double eps) {
  if (!(eps > 0.0)) throw DomainError("w_plus is undefined at eps = 0 (the root diverges)");
  const double e2 = eps * eps;
  return c + (1.0 + std::sqrt(1.0 + e2 * e2 * c * c)) / e2;
}

Matrix2 desing_jacobian(PlanarState s, const Params& p, double step) {
  auto f = [&p](const State<2>& x) {
    return eval_desing_tw(PlanarState::from(x), p).as_array();
  };
  return numerical_jacobian<2>(f, s.as_array(), step);
}

Matrix2 desing_jacobian_exact(PlanarState s, const Params& p) {
  const double gap = s.W - p.c, e2 = p.eps * p.eps;
  // d/dW of W (2c - W)(W - c).
  const double dg = (2 * p.c - 2 * s.W) * gap + s.W * (2 * p.c - s.W);
  return {{{-gap * gap, -2 * s.T * gap - 0.5 * e2 * dg}, {-(1 - 2 * s.T), 0.0}}};
}

Equilibrium make_equilibrium(PlanarState at, const Params& p) {
  Equilibrium e;
  e.location = at;
  e.jacobian = desing_jacobian_exact(at, p);
  e.eigen = eigen2(e.jacobian);
  e.kind = classify(e.eigen);
  return e;
}

std::vector<Equilibrium> equilibria_desing(const Params& p) {
  p.validate();
  std::vector<PlanarState> pts{{0.0, 0.0}, {1.0, p.c}};
  if (p.eps > 0.0) {
    pts.push_back({1.0, w_minus(p.c, p.eps)});
    pts.push_back({1.0, w_plus(p.c, p.eps)});
    // On T = 0 the first component also vanishes for W = c and W = 2c.
    pts.push_back({0.0, p.c});
    pts.push_back({0.0, 2 * p.c});
  }
  std::vector<Equilibrium> out;
  for (const PlanarState& s : pts) {
    const bool inside = s.T >= -0.1 && s.T <= 1.1 && s.W >= -1.0 && s.W <= p.c + 1.0;
    if (!inside) continue;
    out.push_back(make_equilibrium(s, p));
  }
  return out;
}

std::pair<double, double> origin_eigenvalues(const Params& p) {
  const Eigen2 e = eigen2(desing_jacobian({0.0, 0.0}, p));
  return {e.pairs[0].re, e.pairs[1].re};
}

}  // namespace frontspeed
