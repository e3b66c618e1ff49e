#ifndef FRONTSPEED_CLI_IO_HPP_
#define FRONTSPEED_CLI_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "frontspeed/blowup.hpp"
#include "frontspeed/manifolds.hpp"
#include "frontspeed/pde_sim.hpp"
#include "frontspeed/speed_solver.hpp"

#include "json.hpp"

namespace frontspeed {

enum class Command {
  none,
  help,
  version,
  speed,
  sweep,
  shoot,
  profile,
  phase,
  equilibria,
  blowup_verify,
  blowup_portrait,
  pde,
};

std::string_view to_string(Command c);

struct RunConfig {
  Command command = Command::none;

  // traveling-wave parameters
  std::optional<double> c;  // unset means c* (eps) where a speed is needed
  double eps = 0.0;
  Bracket bracket{};
  double tol = 1e-10;
  std::vector<double> eps_list;

  // shoot
  Side side = Side::unstable;
  double delta = 1e-6;

  // blowup
  double kappa = 0.3;
  Chart chart = Chart::keps;
  std::size_t portrait_n = 25;

  // pde
  double rho = 125.0;
  double length = 300.0;
  std::optional<double> dx;
  std::optional<std::size_t> n_cells;
  double t_max = 30.0;
  double output_dt = 0.5;
  IcShape ic = IcShape::indicator;
  std::vector<double> snapshot_times;

  // outputs
  std::string out;
  std::string orbit_out;
  std::string snapshots;

  unsigned workers = 1;

  std::string text;  // help output
};

// args excludes the program name. Throws UsageError naming the offending
// flag or value.
RunConfig parse(const std::vector<std::string>& args);

// Dispatches and writes results. Returns 0 on success, 2 when the speed
// bracket holds no root, 3 on integration failure and 64 on bad input.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse + run with every error mapped to its exit code.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version_string();

// 17 significant digits; non-finite values become null.
std::string format_number(double v);

// JSON text with every number at 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const SpeedResult& r);
nlohmann::ordered_json to_json(const Equilibrium& e);
nlohmann::ordered_json to_json(const TransitionReport& r);

void write_sweep_csv(std::ostream& os, const SweepReport& rep);
void write_track_csv(std::ostream& os, const FrontTrack& track);
void write_snapshot_csv(std::ostream& os, const Snapshot& snap);

}  // namespace frontspeed

#endif  // FRONTSPEED_CLI_IO_HPP_
