#include "frontspeed/dynsys.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "frontspeed/errors.hpp"
#include "frontspeed/integrator.hpp"

namespace frontspeed {

double Params::rho() const {
  if (!(eps > 0.0)) throw DomainError("rho = eps^-3 requires eps > 0");
  return 1.0 / (eps * eps * eps);
}

void Params::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("wavespeed c must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("eps must be non-negative");
}

PlanarState eval_scaled_tw(PlanarState s, const Params& p) {
  const double gap = s.W - p.c;
  if (std::abs(gap) < 1e-14) {
    throw SingularInputError("eval_scaled_tw evaluated on the singular line W = c");
  }
  const double e2 = p.eps * p.eps;
  return {-p.c * s.T + s.W * s.T + 0.5 * s.W * e2 * (2 * p.c - s.W),
          s.T * (1 - s.T) / gap};
}

PlanarState eval_desing_tw(PlanarState s, const Params& p) {
  const double gap = s.W - p.c;
  const double e2 = p.eps * p.eps;
  return {-s.T * gap * gap - 0.5 * s.W * e2 * (2 * p.c - s.W) * gap,
          -s.T * (1 - s.T)};
}

PlanarState eval_reduced(PlanarState s, double c) {
  const double gap = s.W - c;
  return {-s.T * gap * gap, -s.T * (1 - s.T)};
}

State<3> eval_chart_keps(const State<3>& s, double c) {
  const auto [T1, W1, r1] = s;
  const double r3 = r1 * r1 * r1, r4 = r3 * r1;
  return {-W1 * W1 * (1 + r3 * T1) + 0.5 * W1 * (c * c - r4 * W1 * W1),
          -T1 - r3 * T1 * T1, 0.0};
}

State<3> eval_chart_kw(const State<3>& s, double c) {
  const auto [r2, e2, T2] = s;
  const double r3 = r2 * r2 * r2, r4 = r3 * r2;
  return {-0.5 * r2 * T2 - 0.5 * r4 * T2 * T2,
          0.5 * e2 * T2 + 0.5 * r3 * e2 * T2 * T2,
          -(1 + r3 * T2) + 0.5 * e2 * e2 * (c * c - r4) + 1.5 * T2 * T2 +
              1.5 * r3 * T2 * T2 * T2};
}

State<3> eval_shifted(const State<3>& s, double c) {
  const auto [Tt, Wt, e] = s;
  return {-Wt * Wt * (Tt + 1) - 0.5 * Wt * e * e * (c * c - Wt * Wt),
          Tt * (Tt + 1), 0.0};
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::completed: return "completed";
    case Status::event_stopped: return "event-stopped";
    case Status::step_failure: return "step-failure";
    case Status::domain_exit: return "domain-exit";
  }
  return "unknown";
}

void write_csv_row(std::ostream& os, std::span<const double> values) {
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    if (i) os << ',';
    os << buf;
  }
  os << '\n';
}

}  // namespace frontspeed
