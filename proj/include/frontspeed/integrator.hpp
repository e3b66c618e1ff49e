#ifndef FRONTSPEED_INTEGRATOR_HPP_
#define FRONTSPEED_INTEGRATOR_HPP_

// Adaptive Dormand-Prince 5(4) integrator with PI step control and
// section-crossing events for small autonomous systems.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "frontspeed/dynsys.hpp"

namespace frontspeed {

enum class Crossing { rising, falling, any };

// A hyperplane {x[component] = threshold}. Direction is taken along the
// order of integration, so "rising" in a backward run means the component
// grows as the independent variable decreases.
struct Section {
  std::size_t component = 0;
  double threshold = 0.0;
  Crossing direction = Crossing::any;
  bool terminal = true;
  int id = 0;
};

enum class Status { completed, event_stopped, step_failure, domain_exit };

std::string_view to_string(Status s);

struct Tolerances {
  double abs = 1e-10;
  double rel = 1e-8;
};

template <std::size_t N>
struct Box {
  State<N> lo;
  State<N> hi;

  bool contains(const State<N>& x) const {
    for (std::size_t i = 0; i < N; ++i) {
      if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    }
    return true;
  }
};

template <std::size_t N>
struct IntegrateOptions {
  Tolerances tol{};
  std::optional<Box<N>> box{};
  std::size_t max_steps = 10'000'000;
  double initial_step = 0.0;  // 0 selects a step automatically
  double max_step = std::numeric_limits<double>::infinity();
  bool record = true;  // keep every accepted step, not just the endpoints
};

template <std::size_t N>
struct Event {
  int id = 0;
  double t = 0.0;
  State<N> state{};
};

template <std::size_t N>
struct Trajectory {
  std::vector<double> t;
  std::vector<State<N>> x;
  std::vector<Event<N>> events;
  Status status = Status::completed;
  std::size_t steps = 0;
  std::size_t rejected = 0;

  const State<N>& final_state() const { return x.back(); }
  double final_time() const { return t.back(); }
  bool hit(int id) const {
    return std::any_of(events.begin(), events.end(),
                       [id](const Event<N>& e) { return e.id == id; });
  }
};

// CSV with header t,comp0,comp1[,comp2...] at 17 significant digits.
template <std::size_t N>
void write_csv(std::ostream& os, const Trajectory<N>& traj);

void write_csv_row(std::ostream& os, std::span<const double> values);

namespace detail {

struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <std::size_t N>
State<N> axpy(const State<N>& x, double h,
              std::initializer_list<std::pair<double, const State<N>*>> terms) {
  State<N> out = x;
  for (const auto& [coef, k] : terms) {
    if (coef == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * coef * (*k)[i];
  }
  return out;
}

// One Dormand-Prince step. Returns the 5th-order solution; fills the local
// error estimate when requested.
template <std::size_t N, class Field>
State<N> dopri_step(Field& f, const State<N>& x, const State<N>& k1, double h,
                    State<N>* err) {
  using D = Dopri5;
  const State<N> k2 = f(axpy<N>(x, h, {{D::a21, &k1}}));
  const State<N> k3 = f(axpy<N>(x, h, {{D::a31, &k1}, {D::a32, &k2}}));
  const State<N> k4 =
      f(axpy<N>(x, h, {{D::a41, &k1}, {D::a42, &k2}, {D::a43, &k3}}));
  const State<N> k5 = f(axpy<N>(
      x, h, {{D::a51, &k1}, {D::a52, &k2}, {D::a53, &k3}, {D::a54, &k4}}));
  const State<N> k6 = f(axpy<N>(x, h,
                                {{D::a61, &k1},
                                 {D::a62, &k2},
                                 {D::a63, &k3},
                                 {D::a64, &k4},
                                 {D::a65, &k5}}));
  State<N> xn = axpy<N>(x, h,
                        {{D::b1, &k1},
                         {D::b3, &k3},
                         {D::b4, &k4},
                         {D::b5, &k5},
                         {D::b6, &k6}});
  if (err != nullptr) {
    const State<N> k7 = f(xn);
    for (std::size_t i = 0; i < N; ++i) {
      (*err)[i] = h * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] +
                       D::e5 * k5[i] + D::e6 * k6[i] + D::e7 * k7[i]);
    }
  }
  return xn;
}

template <std::size_t N>
State<N> hermite(const State<N>& y0, const State<N>& f0, const State<N>& y1,
                 const State<N>& f1, double h, double theta) {
  const double t2 = theta * theta, t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  State<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  }
  return out;
}

template <std::size_t N>
bool all_finite(const State<N>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline bool crosses(const Section& s, double g0, double g1) {
  const bool up = g0 < 0.0 && g1 >= 0.0;
  const bool down = g0 > 0.0 && g1 <= 0.0;
  switch (s.direction) {
    case Crossing::rising: return up;
    case Crossing::falling: return down;
    case Crossing::any: return up || down;
  }
  return false;
}

}  // namespace detail

// Integrates x' = field(x) from t0 toward t1 (t1 < t0 runs backward; t1 may
// be infinite when a terminal section bounds the run). Each section
// crossing is bracketed on the cubic Hermite interpolant by bisection and
// then polished with Newton iterations on a true Runge-Kutta sub-step.
template <std::size_t N, class Field>
Trajectory<N> integrate(Field&& field, const State<N>& x0, double t0, double t1,
                        std::span<const Section> sections = {},
                        const IntegrateOptions<N>& opt = {}) {
  auto& f = field;
  Trajectory<N> traj;
  traj.t.push_back(t0);
  traj.x.push_back(x0);
  if (t1 == t0) return traj;
  const double dir = t1 > t0 ? 1.0 : -1.0;

  auto err_norm = [&](const State<N>& x, const State<N>& xn, const State<N>& e) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.tol.abs + opt.tol.rel * std::max(std::abs(x[i]), std::abs(xn[i]));
      acc += (e[i] / sc) * (e[i] / sc);
    }
    return std::sqrt(acc / N);
  };

  double t = t0;
  State<N> x = x0;
  State<N> k1 = f(x);

  double h = opt.initial_step;
  if (h <= 0.0) {
    // Hairer's starting-step heuristic.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.tol.abs + opt.tol.rel * std::abs(x[i]);
      d0 += (x[i] / sc) * (x[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, opt.max_step);
    const State<N> x1 = detail::axpy<N>(x, dir * h0, {{1.0, &k1}});
    const State<N> k2 = f(x1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.tol.abs + opt.tol.rel * std::abs(x[i]);
      d2 += ((k2[i] - k1[i]) / sc) * ((k2[i] - k1[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100 * h0, h1, opt.max_step});
  }
  h = std::min(h, std::abs(t1 - t0));

  constexpr double beta = 0.04, expo = 0.2 - 0.75 * beta, safe = 0.9;
  constexpr double fac_lo = 0.2, fac_hi = 10.0;
  double err_old = 1e-4;
  bool last_rejected = false;

  while (dir * (t1 - t) > 0.0) {
    if (traj.steps + traj.rejected >= opt.max_steps) {
      traj.status = Status::step_failure;
      return traj;
    }
    const double remaining = std::abs(t1 - t);
    if (h >= remaining) h = remaining;
    const double hs = dir * h;

    State<N> e{};
    const State<N> xn = detail::dopri_step<N>(f, x, k1, hs, &e);
    const double err = detail::all_finite(xn) ? err_norm(x, xn, e)
                                              : std::numeric_limits<double>::infinity();

    if (!(err <= 1.0)) {
      ++traj.rejected;
      const double fac = std::isfinite(err) ? std::min(1.0 / fac_lo, std::pow(err, expo) / safe)
                                            : 10.0;
      h /= fac;
      last_rejected = true;
      if (h < 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        traj.status = Status::step_failure;
        return traj;
      }
      continue;
    }

    const double tn = (h == remaining) ? t1 : t + hs;
    const State<N> kn = f(xn);
    ++traj.steps;

    // Earliest event inside (t, tn].
    std::optional<std::pair<double, std::size_t>> first;
    std::vector<std::pair<double, std::size_t>> hits;
    for (std::size_t si = 0; si < sections.size(); ++si) {
      const Section& s = sections[si];
      const double g0 = x[s.component] - s.threshold;
      const double g1 = xn[s.component] - s.threshold;
      if (!detail::crosses(s, g0, g1)) continue;
      // Bisection on the Hermite interpolant in the normalized variable.
      double a = 0.0, b = 1.0;
      const double ga = g0;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b || (b - a) * h <= 1e-12 * 0.5) break;
        const double gm =
            detail::hermite<N>(x, k1, xn, kn, hs, m)[s.component] - s.threshold;
        if ((gm < 0.0) == (ga < 0.0) && gm != 0.0) {
          a = m;
        } else {
          b = m;
        }
      }
      double sub = 0.5 * (a + b) * hs;
      // Newton polish on the actual Runge-Kutta solution.
      for (int it = 0; it < 8; ++it) {
        const State<N> xs = detail::dopri_step<N>(f, x, k1, sub, nullptr);
        const double g = xs[s.component] - s.threshold;
        const double dg = f(xs)[s.component];
        if (dg == 0.0 || !std::isfinite(dg)) break;
        double next = sub - g / dg;
        next = dir > 0 ? std::clamp(next, 0.0, hs) : std::clamp(next, hs, 0.0);
        const double delta = std::abs(next - sub);
        sub = next;
        if (delta <= 1e-15 * std::max(1.0, std::abs(t))) break;
      }
      hits.emplace_back(sub, si);
    }
    std::sort(hits.begin(), hits.end(), [dir](const auto& l, const auto& r) {
      return dir * l.first < dir * r.first;
    });
    for (const auto& [sub, si] : hits) {
      const State<N> xs = detail::dopri_step<N>(f, x, k1, sub, nullptr);
      traj.events.push_back({sections[si].id, t + sub, xs});
      if (sections[si].terminal) {
        traj.t.push_back(t + sub);
        traj.x.push_back(xs);
        traj.status = Status::event_stopped;
        return traj;
      }
    }

    if (opt.box && !opt.box->contains(xn)) {
      traj.t.push_back(tn);
      traj.x.push_back(xn);
      traj.status = Status::domain_exit;
      return traj;
    }
    if (opt.record) {
      traj.t.push_back(tn);
      traj.x.push_back(xn);
    }

    t = tn;
    x = xn;
    k1 = kn;

    // PI step-size controller.
    const double fac11 = std::pow(err, expo);
    double fac = fac11 / std::pow(err_old, beta);
    fac = std::clamp(fac / safe, 1.0 / fac_hi, 1.0 / fac_lo);
    double hnew = h / fac;
    if (last_rejected) hnew = std::min(hnew, h);
    err_old = std::max(err, 1e-4);
    last_rejected = false;
    h = std::min(hnew, opt.max_step);
  }

  if (!opt.record) {
    traj.t.push_back(t);
    traj.x.push_back(x);
  }
  traj.status = Status::completed;
  return traj;
}

template <std::size_t N>
void write_csv(std::ostream& os, const Trajectory<N>& traj) {
  os << "t";
  for (std::size_t i = 0; i < N; ++i) os << ",comp" << i;
  os << '\n';
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    std::array<double, N + 1> row{};
    row[0] = traj.t[k];
    std::copy(traj.x[k].begin(), traj.x[k].end(), row.begin() + 1);
    write_csv_row(os, row);
  }
}

}  // namespace frontspeed

#endif  // FRONTSPEED_INTEGRATOR_HPP_
