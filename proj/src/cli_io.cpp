#include "frontspeed/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "frontspeed/equilibria.hpp"
#include "frontspeed/singular_limit.hpp"

namespace frontspeed {

using ojson = nlohmann::ordered_json;

namespace {

std::string_view to_string(Chart ch) { return ch == Chart::keps ? "keps" : "kw"; }

void dump_into(std::string& out, const ojson& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case ojson::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    case ojson::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(out, j[i], depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad;
        dump_into(out, j[i], depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      return;
    }
    case ojson::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + ojson(it.key()).dump() + ": ";
        dump_into(out, it.value(), depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

ojson num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::ofstream open_output(const std::string& path, const char* flag) {
  std::ofstream f(path);
  if (!f) throw UsageError(std::string(flag) + ": cannot open '" + path + "' for writing");
  return f;
}

// Config keys mirror the long flag names with dashes replaced by
// underscores.
void apply_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read '" + path + "'");
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const std::exception& ex) {
    throw UsageError("--config: '" + path + "' is not valid JSON: " + ex.what());
  }
  if (!j.is_object()) throw UsageError("--config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const ojson& v = it.value();
    try {
      if (k == "c") cfg.c = v.get<double>();
      else if (k == "eps") cfg.eps = v.get<double>();
      else if (k == "bracket") {
        const auto b = v.get<std::vector<double>>();
        if (b.size() != 2) throw UsageError("--config: 'bracket' needs two numbers");
        cfg.bracket = {b[0], b[1]};
      } else if (k == "tol") cfg.tol = v.get<double>();
      else if (k == "eps_list") cfg.eps_list = v.get<std::vector<double>>();
      else if (k == "side") {
        const auto s = v.get<std::string>();
        if (s != "u" && s != "s") throw UsageError("--config: 'side' must be u or s");
        cfg.side = s == "u" ? Side::unstable : Side::strong_stable;
      } else if (k == "delta") cfg.delta = v.get<double>();
      else if (k == "kappa") cfg.kappa = v.get<double>();
      else if (k == "chart") {
        const auto s = v.get<std::string>();
        if (s != "keps" && s != "kw") throw UsageError("--config: 'chart' must be keps or kw");
        cfg.chart = s == "keps" ? Chart::keps : Chart::kw;
      } else if (k == "n") cfg.portrait_n = v.get<std::size_t>();
      else if (k == "rho") cfg.rho = v.get<double>();
      else if (k == "L") cfg.length = v.get<double>();
      else if (k == "dx") cfg.dx = v.get<double>();
      else if (k == "n_cells") cfg.n_cells = v.get<std::size_t>();
      else if (k == "tmax") cfg.t_max = v.get<double>();
      else if (k == "output_dt") cfg.output_dt = v.get<double>();
      else if (k == "ic") {
        const auto s = v.get<std::string>();
        if (s != "indicator" && s != "tent") {
          throw UsageError("--config: 'ic' must be indicator or tent");
        }
        cfg.ic = s == "tent" ? IcShape::tent : IcShape::indicator;
      } else if (k == "snapshot_times") cfg.snapshot_times = v.get<std::vector<double>>();
      else if (k == "out") cfg.out = v.get<std::string>();
      else if (k == "orbit_out") cfg.orbit_out = v.get<std::string>();
      else if (k == "snapshots") cfg.snapshots = v.get<std::string>();
      else if (k == "workers") cfg.workers = v.get<unsigned>();
      else throw UsageError("--config: unknown key '" + k + "'");
    } catch (const nlohmann::json::exception& ex) {
      throw UsageError("--config: bad value for '" + k + "': " + ex.what());
    }
  }
  if (cfg.dx && cfg.n_cells) throw UsageError("--config: 'dx' excludes 'n_cells'");
}

void validate(const RunConfig& cfg) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
  };
  need(cfg.eps >= 0.0 && std::isfinite(cfg.eps), "--eps: must be a finite number >= 0");
  if (cfg.c) need(*cfg.c > 0.0 && std::isfinite(*cfg.c), "--c: must be positive");
  need(cfg.bracket.lo > 0.0 && cfg.bracket.lo < cfg.bracket.hi,
       "--bracket: needs 0 < LO < HI");
  need(cfg.tol > 0.0, "--tol: must be positive");
  need(cfg.delta >= 1e-9 && cfg.delta <= 1e-3, "--delta: must lie in [1e-9, 1e-3]");
  need(cfg.kappa > 0.0 && cfg.kappa < 1.0, "--kappa: must lie in (0, 1)");
  need(cfg.portrait_n >= 2, "--n: must be at least 2");
  need(cfg.rho > 0.0, "--rho: must be positive");
  need(cfg.length > 0.0, "--L: must be positive");
  if (cfg.dx) need(*cfg.dx > 0.0, "--dx: must be positive");
  if (cfg.n_cells) need(*cfg.n_cells >= 100, "--n-cells: must be at least 100");
  need(cfg.t_max > 0.0, "--tmax: must be positive");
  need(cfg.output_dt > 0.0, "--output-dt: must be positive");
  for (double t : cfg.snapshot_times) {
    need(t >= 0.0 && t <= cfg.t_max, "--snapshot-times: times must lie in [0, tmax]");
  }
  need(cfg.workers >= 1, "--workers: must be at least 1");
  if (cfg.command == Command::sweep) {
    need(!cfg.eps_list.empty(), "--eps-list: required");
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
      need(cfg.eps_list[i] > 0.0, "--eps-list: entries must be positive");
      need(i == 0 || cfg.eps_list[i] < cfg.eps_list[i - 1],
           "--eps-list: entries must be strictly descending");
    }
  }
  if (cfg.command == Command::blowup_verify) {
    need(!cfg.eps_list.empty(), "--eps-list: required");
    for (double e : cfg.eps_list) need(e > 0.0, "--eps-list: entries must be positive");
  }
  if (cfg.command == Command::profile) need(cfg.eps > 0.0, "--eps: profile needs eps > 0");
}

double c_or_default(const RunConfig& cfg) { return cfg.c.value_or(c_star_0()); }

SpeedOptions speed_options(const RunConfig& cfg) {
  SpeedOptions opt;
  opt.bracket = cfg.bracket;
  opt.tol_c = cfg.tol;
  opt.shoot.delta = cfg.delta;
  return opt;
}

void emit(std::ostream& out, const ojson& j) { out << dump_json(j) << '\n'; }

int run_speed(const RunConfig& cfg, std::ostream& out) {
  emit(out, to_json(solve_speed(cfg.eps, speed_options(cfg))));
  return 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SweepReport rep = sweep(cfg.eps_list, speed_options(cfg), cfg.workers);
  int code = 0;
  for (const auto& e : rep.entries) {
    if (e.result) continue;
    err << "error: eps = " << format_number(e.eps) << ": " << e.error << '\n';
    if (code == 0) code = e.no_root ? 2 : 3;
  }
  if (cfg.out.empty()) {
    write_sweep_csv(out, rep);
  } else {
    auto f = open_output(cfg.out, "--out");
    write_sweep_csv(f, rep);
    ojson j;
    j["entries"] = rep.entries.size();
    std::size_t solved = 0;
    for (const auto& e : rep.entries) solved += e.result.has_value();
    j["solved"] = solved;
    j["order"] = num(rep.order);
    j["extrapolated"] = num(rep.extrapolated);
    j["out"] = cfg.out;
    emit(out, j);
  }
  return code;
}

void write_orbit(const std::string& path, const Trajectory<2>& orbit) {
  auto f = open_output(path, "--orbit-out");
  f << "t,T,W\n";
  for (std::size_t k = 0; k < orbit.t.size(); ++k) {
    const std::array<double, 3> row{orbit.t[k], orbit.x[k][0], orbit.x[k][1]};
    write_csv_row(f, row);
  }
}

int run_shoot(const RunConfig& cfg, std::ostream& out) {
  const Params p{c_or_default(cfg), cfg.eps};
  ShootOptions opt;
  opt.delta = cfg.delta;
  opt.record = !cfg.orbit_out.empty();
  const ShootResult r =
      cfg.side == Side::unstable ? shoot_unstable(p, opt) : shoot_strong_stable(p, opt);
  if (opt.record) write_orbit(cfg.orbit_out, r.orbit);
  ojson j;
  j["c"] = p.c;
  j["eps"] = p.eps;
  j["side"] = std::string(to_string(cfg.side));
  j["section_T"] = r.section_T;
  j["section_W"] = r.section_W;
  j["delta"] = r.delta;
  j["eigenvalue"] = r.eigenvalue;
  j["seed"] = ojson::array({r.seed.T, r.seed.W});
  j["steps"] = r.orbit.steps;
  j["status"] = std::string(to_string(r.orbit.status));
  j["converged"] = r.converged;
  emit(out, j);
  return r.converged ? 0 : 3;
}

int run_profile(const RunConfig& cfg, std::ostream& out) {
  const double c = cfg.c ? *cfg.c : solve_speed(cfg.eps, speed_options(cfg)).c_star;
  ProfileOptions opt;
  opt.shoot.delta = cfg.delta;
  const FrontProfile prof = front_profile(cfg.eps, c, opt);
  if (!cfg.out.empty()) {
    auto f = open_output(cfg.out, "--out");
    f << "X,tau,T,W\n";
    for (const auto& s : prof.samples) {
      const std::array<double, 4> row{s.X, s.tau, s.T, s.W};
      write_csv_row(f, row);
    }
  }
  const auto mu = origin_eigenvalues({c, cfg.eps});
  ojson j;
  j["eps"] = cfg.eps;
  j["c"] = c;
  j["samples"] = prof.samples.size();
  j["monotone"] = prof.monotone;
  j["decay_rate"] = prof.decay_rate;
  j["decay_rate_X"] = prof.decay_rate_X;
  j["mu_minus"] = mu.first;
  emit(out, j);
  return 0;
}

int run_phase(const RunConfig& cfg, std::ostream& out) {
  const double c = c_or_default(cfg);
  std::ofstream file;
  if (!cfg.out.empty()) file = open_output(cfg.out, "--out");
  std::ostream& os = cfg.out.empty() ? out : file;
  os << "branch,T,W\n";
  auto row = [&](const char* branch, double T, double W) {
    os << branch << ',' << format_number(T) << ',' << format_number(W) << '\n';
  };
  if (cfg.eps == 0.0) {
    // Closed-form branches of the reduced flow; they coincide at c*.
    constexpr int n = 200;
    for (int i = 0; i <= n; ++i) {
      const double T = static_cast<double>(i) / n;
      row("stable", T, g_s(c, T));
    }
    for (int i = 0; i <= n; ++i) {
      const double T = static_cast<double>(i) / n;
      row("unstable", T, g_u(c, T));
    }
    return 0;
  }
  ShootOptions opt;
  opt.delta = cfg.delta;
  const Params p{c, cfg.eps};
  const ShootResult u = shoot_unstable(p, opt);
  for (const auto& x : u.orbit.x) row("unstable", x[0], x[1]);
  const ShootResult s = shoot_strong_stable(p, opt);
  for (const auto& x : s.orbit.x) row("strong_stable", x[0], x[1]);
  return 0;
}

int run_equilibria(const RunConfig& cfg, std::ostream& out) {
  ojson arr = ojson::array();
  for (const auto& e : equilibria_desing({c_or_default(cfg), cfg.eps})) arr.push_back(to_json(e));
  emit(out, arr);
  return 0;
}

int run_blowup_verify(const RunConfig& cfg, std::ostream& out) {
  TransitionOptions opt;
  opt.workers = cfg.workers;
  emit(out, to_json(verify_transition(c_or_default(cfg), cfg.kappa, cfg.eps_list, opt)));
  return 0;
}

int run_blowup_portrait(const RunConfig& cfg, std::ostream& out) {
  std::ofstream file;
  if (!cfg.out.empty()) file = open_output(cfg.out, "--out");
  std::ostream& os = cfg.out.empty() ? out : file;
  os << (cfg.chart == Chart::keps ? "T1,W1,dT1,dW1\n" : "eps2,T2,deps2,dT2\n");
  for (const auto& r : portrait(cfg.chart, c_or_default(cfg), cfg.portrait_n)) {
    write_csv_row(os, r);
  }
  return 0;
}

std::string snapshot_path(const std::string& base, double t, bool several) {
  if (!several) return base;
  char tag[64];
  std::snprintf(tag, sizeof tag, "_t%g", t);
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

int run_pde(const RunConfig& cfg, std::ostream& out) {
  PdeConfig pc;
  pc.rho = cfg.rho;
  if (cfg.n_cells) {
    pc.grid = Grid{0.0, cfg.length, *cfg.n_cells};
    pc.grid.validate();
  } else {
    pc.grid = Grid::with_spacing(0.0, cfg.length, cfg.dx.value_or(0.02));
  }
  pc.t_max = cfg.t_max;
  pc.output_dt = cfg.output_dt;
  pc.ic.shape = cfg.ic;
  if (!cfg.snapshots.empty()) {
    pc.snapshot_times = cfg.snapshot_times;
    if (pc.snapshot_times.empty()) pc.snapshot_times.push_back(cfg.t_max);
  }
  const FrontTrack track = measure_speed(pc);
  if (!cfg.out.empty()) {
    auto f = open_output(cfg.out, "--out");
    write_track_csv(f, track);
  }
  for (const auto& sn : track.snapshots) {
    auto f = open_output(snapshot_path(cfg.snapshots, sn.time, track.snapshots.size() > 1),
                         "--snapshots");
    write_snapshot_csv(f, sn);
  }
  ojson j;
  j["rho"] = cfg.rho;
  j["speed"] = track.speed;
  j["ratio"] = track.ratio;
  j["fit_residual"] = track.fit_residual;
  j["L"] = cfg.length;
  j["dx"] = pc.grid.dx();
  j["tmax"] = cfg.t_max;
  j["T_min"] = track.T_min;
  j["T_max"] = track.T_max;
  j["in_range"] = track.in_range;
  emit(out, j);
  return 0;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::none: return "none";
    case Command::help: return "help";
    case Command::version: return "version";
    case Command::speed: return "speed";
    case Command::sweep: return "sweep";
    case Command::shoot: return "shoot";
    case Command::profile: return "profile";
    case Command::phase: return "phase";
    case Command::equilibria: return "equilibria";
    case Command::blowup_verify: return "blowup verify";
    case Command::blowup_portrait: return "blowup portrait";
    case Command::pde: return "pde";
  }
  return "?";
}

std::string version_string() {
  return std::string("frontspeed ") + FRONTSPEED_VERSION + " (build " + FRONTSPEED_BUILD_TYPE +
         ", " + FRONTSPEED_COMPILER + ")";
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump_json(const ojson& j) {
  std::string s;
  dump_into(s, j, 0);
  return s;
}

ojson to_json(const SpeedResult& r) {
  ojson j;
  j["eps"] = r.eps;
  j["c_star"] = r.c_star;
  j["rho"] = num(r.rho);
  j["ctilde_star"] = num(r.ctilde_star);
  j["ratio"] = r.ratio();
  j["residual"] = r.residual;
  j["bracket"] = ojson::array({r.bracket.lo, r.bracket.hi});
  j["iterations"] = r.iterations;
  return j;
}

ojson to_json(const Equilibrium& e) {
  ojson j;
  j["T"] = e.location.T;
  j["W"] = e.location.W;
  j["kind"] = std::string(to_string(e.kind));
  ojson eig = ojson::array();
  for (const auto& p : e.eigen.pairs) eig.push_back(ojson::array({p.re, p.im}));
  j["eigenvalues"] = eig;
  j["jacobian"] = ojson::array({ojson::array({e.jacobian[0][0], e.jacobian[0][1]}),
                                ojson::array({e.jacobian[1][0], e.jacobian[1][1]})});
  return j;
}

ojson to_json(const TransitionReport& r) {
  ojson j;
  j["c"] = r.c;
  j["kappa"] = r.kappa;
  j["phi"] = r.phi;
  ojson entries = ojson::array();
  for (const auto& e : r.entries) {
    ojson x;
    x["eps"] = e.eps;
    x["ok"] = e.ok;
    x["d"] = e.ok ? num(e.d) : ojson(nullptr);
    x["ratio"] = e.ok ? num(e.ratio) : ojson(nullptr);
    if (e.ok) {
      x["s2_in"] = e.s2_in;
      x["s2_in0"] = e.s2_in0;
      x["invariant_drift"] = e.invariant_drift;
      x["transit_sigma"] = e.transit_sigma;
    } else {
      x["error"] = e.error;
    }
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["ratio_spread"] = num(r.ratio_spread);
  j["order"] = num(r.order);
  j["pass"] = r.pass;
  return j;
}

void write_sweep_csv(std::ostream& os, const SweepReport& rep) {
  os << "eps,c_star,rho,ctilde_star,ratio,residual,iters\n";
  for (const auto& e : rep.entries) {
    if (!e.result) continue;
    const SpeedResult& r = *e.result;
    os << format_number(r.eps) << ',' << format_number(r.c_star) << ',' << format_number(r.rho)
       << ',' << format_number(r.ctilde_star) << ',' << format_number(r.ratio()) << ','
       << format_number(r.residual) << ',' << r.iterations << '\n';
  }
}

void write_track_csv(std::ostream& os, const FrontTrack& track) {
  os << "time,front_x\n";
  for (std::size_t i = 0; i < track.time.size(); ++i) {
    const std::array<double, 2> row{track.time[i], track.position[i]};
    write_csv_row(os, row);
  }
}

void write_snapshot_csv(std::ostream& os, const Snapshot& snap) {
  os << "x,T,u\n";
  for (std::size_t i = 0; i < snap.x.size(); ++i) {
    const std::array<double, 3> row{snap.x[i], snap.T[i], snap.u[i]};
    write_csv_row(os, row);
  }
}

RunConfig parse(const std::vector<std::string>& args) {
  RunConfig cfg;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config: requires a file argument");
      apply_config(args[i + 1], cfg);
    } else if (args[i].rfind("--config=", 0) == 0) {
      apply_config(args[i].substr(9), cfg);
    }
  }

  CLI::App app{"Pushed-front speeds of the inviscid reaction-diffusion-advection system",
               "frontspeed"};
  app.fallthrough();
  std::string config_path;
  bool show_version = false;
  app.add_option("--config", config_path, "JSON file of default option values");
  app.add_flag("--version", show_version, "Print version and build metadata");
  app.add_option("--workers", cfg.workers, "Worker threads for sweep and blowup verify")
      ->check(CLI::Range(1u, 1024u));

  double c_val = cfg.c.value_or(c_star_0());
  std::vector<CLI::Option*> c_opts;
  auto add_c = [&](CLI::App* sub, const char* help) {
    c_opts.push_back(sub->add_option("--c", c_val, help)->check(CLI::PositiveNumber));
  };
  auto add_eps = [&](CLI::App* sub) {
    sub->add_option("--eps", cfg.eps, "Small parameter eps = rho^(-1/3)")
        ->check(CLI::NonNegativeNumber);
  };
  std::vector<double> bracket;
  double dx_val = cfg.dx.value_or(0.02);
  std::size_t n_cells_val = cfg.n_cells.value_or(15000);
  std::string side = cfg.side == Side::unstable ? "u" : "s";
  std::string chart(to_string(cfg.chart));
  std::string ic = cfg.ic == IcShape::tent ? "tent" : "indicator";

  auto* speed = app.add_subcommand("speed", "Selected speed c*(eps) by shooting");
  add_eps(speed);
  speed->add_option("--bracket", bracket, "Search interval LO HI")->expected(2);
  speed->add_option("--tol", cfg.tol, "Tolerance on c")->check(CLI::PositiveNumber);
  speed->add_option("--delta", cfg.delta, "Manifold seed offset");

  auto* sw = app.add_subcommand("sweep", "c*(eps) over a descending list of eps");
  sw->add_option("--eps-list", cfg.eps_list, "Comma separated eps values")
      ->delimiter(',')
      ->required(cfg.eps_list.empty());
  sw->add_option("--bracket", bracket, "Search interval LO HI")->expected(2);
  sw->add_option("--tol", cfg.tol, "Tolerance on c")->check(CLI::PositiveNumber);
  sw->add_option("--delta", cfg.delta, "Manifold seed offset");
  sw->add_option("--out", cfg.out, "CSV output path");

  auto* sh = app.add_subcommand("shoot", "Section value of one invariant manifold");
  add_c(sh, "Wave speed (default cbrt(3/2))");
  add_eps(sh);
  sh->add_option("--side", side, "u: unstable manifold of (1, w-), s: strong stable of the origin")
      ->check(CLI::IsMember({"u", "s"}));
  sh->add_option("--delta", cfg.delta, "Manifold seed offset");
  sh->add_option("--orbit-out", cfg.orbit_out, "CSV of the orbit (t,T,W)");

  auto* pr = app.add_subcommand("profile", "Front profile and tail decay at eps > 0");
  add_c(pr, "Wave speed (default c*(eps))");
  add_eps(pr);
  pr->add_option("--bracket", bracket, "Search interval LO HI")->expected(2);
  pr->add_option("--tol", cfg.tol, "Tolerance on c")->check(CLI::PositiveNumber);
  pr->add_option("--delta", cfg.delta, "Manifold seed offset");
  pr->add_option("--out", cfg.out, "CSV output path (X,tau,T,W)");

  auto* ph = app.add_subcommand("phase", "Phase-plane branches as CSV");
  add_c(ph, "Wave speed (default cbrt(3/2))");
  add_eps(ph);
  ph->add_option("--delta", cfg.delta, "Manifold seed offset");
  ph->add_option("--out", cfg.out, "CSV output path");

  auto* eq = app.add_subcommand("equilibria", "Fixed points of the desingularized field");
  add_c(eq, "Wave speed (default cbrt(3/2))");
  add_eps(eq);

  auto* bl = app.add_subcommand("blowup", "Blow-up charts of the nilpotent point");
  bl->fallthrough();
  bl->require_subcommand(1);
  auto* ver = bl->add_subcommand("verify", "Sigma_in to Sigma_out offset scaling");
  add_c(ver, "Wave speed (default cbrt(3/2))");
  ver->add_option("--kappa", cfg.kappa, "Section parameter");
  ver->add_option("--eps-list", cfg.eps_list, "Comma separated eps values")
      ->delimiter(',')
      ->required(cfg.eps_list.empty());
  auto* por = bl->add_subcommand("portrait", "Field samples on the blow-up sphere");
  add_c(por, "Wave speed (default cbrt(3/2))");
  por->add_option("--chart", chart, "keps or kw")->check(CLI::IsMember({"keps", "kw"}));
  por->add_option("--n", cfg.portrait_n, "Samples per axis");
  por->add_option("--out", cfg.out, "CSV output path");

  auto* pd = app.add_subcommand("pde", "Direct simulation and front speed");
  pd->add_option("--rho", cfg.rho, "Coupling rho")->check(CLI::PositiveNumber);
  pd->add_option("--L", cfg.length, "Domain length")->check(CLI::PositiveNumber);
  auto* dx_opt = pd->add_option("--dx", dx_val, "Cell width")->check(CLI::PositiveNumber);
  auto* n_opt = pd->add_option("--n-cells", n_cells_val, "Number of cells");
  dx_opt->excludes(n_opt);
  pd->add_option("--tmax", cfg.t_max, "Final time")->check(CLI::PositiveNumber);
  pd->add_option("--output-dt", cfg.output_dt, "Front sampling interval")
      ->check(CLI::PositiveNumber);
  pd->add_option("--ic", ic, "Initial shape: indicator or tent")
      ->check(CLI::IsMember({"indicator", "tent"}));
  pd->add_option("--out", cfg.out, "Track CSV (time,front_x)");
  pd->add_option("--snapshots", cfg.snapshots, "Snapshot CSV path (x,T,u)");
  pd->add_option("--snapshot-times", cfg.snapshot_times, "Comma separated snapshot times")
      ->delimiter(',');

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    cfg.command = Command::help;
    cfg.text = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.command = Command::help;
    cfg.text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& ex) {
    throw UsageError(ex.what());
  }

  if (!bracket.empty()) cfg.bracket = {bracket[0], bracket[1]};
  for (auto* o : c_opts) {
    if (o->count() > 0) cfg.c = c_val;
  }
  if (dx_opt->count() > 0) {
    cfg.dx = dx_val;
    cfg.n_cells.reset();
  }
  if (n_opt->count() > 0) {
    cfg.n_cells = n_cells_val;
    cfg.dx.reset();
  }
  cfg.side = side == "u" ? Side::unstable : Side::strong_stable;
  cfg.chart = chart == "keps" ? Chart::keps : Chart::kw;
  cfg.ic = ic == "tent" ? IcShape::tent : IcShape::indicator;

  if (*speed) cfg.command = Command::speed;
  else if (*sw) cfg.command = Command::sweep;
  else if (*sh) cfg.command = Command::shoot;
  else if (*pr) cfg.command = Command::profile;
  else if (*ph) cfg.command = Command::phase;
  else if (*eq) cfg.command = Command::equilibria;
  else if (*ver) cfg.command = Command::blowup_verify;
  else if (*por) cfg.command = Command::blowup_portrait;
  else if (*pd) cfg.command = Command::pde;
  else if (show_version) cfg.command = Command::version;
  else throw UsageError("a subcommand is required (speed, sweep, shoot, profile, phase, "
                        "equilibria, blowup, pde)");
  validate(cfg);
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::help: out << cfg.text; return 0;
      case Command::version: out << version_string() << '\n'; return 0;
      case Command::speed: return run_speed(cfg, out);
      case Command::sweep: return run_sweep(cfg, out, err);
      case Command::shoot: return run_shoot(cfg, out);
      case Command::profile: return run_profile(cfg, out);
      case Command::phase: return run_phase(cfg, out);
      case Command::equilibria: return run_equilibria(cfg, out);
      case Command::blowup_verify: return run_blowup_verify(cfg, out);
      case Command::blowup_portrait: return run_blowup_portrait(cfg, out);
      case Command::pde: return run_pde(cfg, out);
      case Command::none: break;
    }
    throw UsageError("no subcommand");
  } catch (const NoSignChangeError& ex) {
    err << "error: " << ex.what() << '\n';
    return 2;
  } catch (const IntegrationError& ex) {
    err << "error: " << ex.what() << '\n';
    return 3;
  } catch (const StateInvariantError& ex) {
    err << "error: " << ex.what() << '\n';
    return 3;
  } catch (const CflError& ex) {
    err << "error: " << ex.what() << '\n';
    return 3;
  } catch (const FrontAtBoundaryError& ex) {
    err << "error: " << ex.what() << '\n';
    return 3;
  } catch (const DomainError& ex) {
    err << "error: " << ex.what() << '\n';
    return 64;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << '\n';
    return 64;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse(args);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return 64;
  }
  try {
    return run(cfg, out, err);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
}

}  // namespace frontspeed
