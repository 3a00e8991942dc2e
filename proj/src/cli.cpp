#include "polyreal/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "polyreal/error.hpp"
#include "polyreal/macaulay.hpp"
#include "polyreal/parser.hpp"
#include "polyreal/realization.hpp"
#include "polyreal/report.hpp"
#include "polyreal/root_solver.hpp"

namespace polyreal::cli {

namespace {

// Relative trajectory residual accepted by the simulate command.
constexpr double kTrajectoryTol = 1e-6;

struct Options {
  std::string file;
  std::string roots_file;
  std::optional<int> degree;
  std::optional<int> max_degree;
  std::optional<double> tol;
  double basis_tol = SolveConfig{}.basis_tol;
  double residual_tol = SolveConfig{}.residual_tol;
  std::optional<double> cluster_tol;
  std::uint64_t seed = SolveConfig{}.seed;
  bool square_s0 = false;
  bool json = false;
  std::vector<double> x0;
  std::vector<int> extents;

  SolveConfig config() const {
    SolveConfig cfg;
    cfg.degree = degree;
    cfg.max_degree = max_degree;
    cfg.tol = tol;
    cfg.basis_tol = basis_tol;
    cfg.residual_tol = residual_tol;
    cfg.cluster_tol = cluster_tol;
    cfg.seed = seed;
    cfg.square_s0 = square_s0;
    cfg.validate();
    return cfg;
  }

  std::optional<Eigen::VectorXd> initial_state() const {
    if (x0.empty()) return std::nullopt;
    return Eigen::Map<const Eigen::VectorXd>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PolySystem load_system(const std::string& path) { return parse_system(read_file(path)); }

void add_solve_options(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.file, "Polynomial system file")->required();
  cmd->add_option("--degree", o.degree, "Starting Macaulay degree");
  cmd->add_option("--max-degree", o.max_degree, "Last Macaulay degree tried");
  cmd->add_option("--tol", o.tol, "Rank tolerance for the Macaulay matrix, relative to its largest singular value");
  cmd->add_option("--basis-tol", o.basis_tol, "Rank tolerance on rows of the orthonormal null-space basis");
  cmd->add_option("--residual-tol", o.residual_tol, "Residual above which a root is flagged");
  cmd->add_option("--cluster-tol", o.cluster_tol, "Radius for merging raw roots");
  cmd->add_option("--seed", o.seed, "Seed of the random shift combination");
  cmd->add_flag("--square-s0", o.square_s0, "Use the independent rows only in the shift problem");
}

int cmd_solve(const Options& o, std::ostream& out) {
  const PolySystem sys = load_system(o.file);
  const RootSet roots = solve(sys, o.config());
  if (o.json) {
    out << solve_json(sys, roots).dump(2) << '\n';
  } else {
    write_solve_text(out, sys, roots);
  }
  return ok;
}

int cmd_realize(const Options& o, std::ostream& out) {
  const PolySystem sys = load_system(o.file);
  const RealizationReport report = realize(sys, o.config(), o.initial_state());
  if (o.json) {
    out << realization_json(sys, report).dump(2) << '\n';
  } else {
    write_realization_text(out, sys, report);
  }
  return ok;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const PolySystem sys = load_system(o.file);
  const RealizationReport report = realize(sys, o.config(), o.initial_state());
  std::vector<int> extents = o.extents;
  if (extents.size() == 1 && sys.num_vars() > 1) extents.assign(static_cast<std::size_t>(sys.num_vars()), extents[0]);
  if (static_cast<int>(extents.size()) != sys.num_vars()) {
    throw ArgumentError("--extents needs one value per variable (" + std::to_string(sys.num_vars()) + ")");
  }
  const TrajectoryGrid grid = simulate(report.realization, extents);
  write_grid_csv(out, grid);
  const bool checkable = std::all_of(extents.begin(), extents.end(), [&](int k) { return k > sys.max_degree(); });
  if (!checkable) {
    out << "residual: n/a (grid too small for the difference equations)\n";
    return ok;
  }
  const double residual = verify_trajectory(sys, grid);
  const double scale = std::max(grid.max_abs(), 1.0);
  out << "residual: " << format_number(residual) << " (relative " << format_number(residual / scale) << ")\n";
  return residual <= kTrajectoryTol * scale ? ok : verification_failure;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const PolySystem sys = load_system(o.file);
  if (!(o.residual_tol > 0.0)) throw ArgumentError("residual tolerance must be positive");
  std::vector<ClaimedRoot> claimed;
  try {
    claimed = roots_from_json(nlohmann::ordered_json::parse(read_file(o.roots_file)));
  } catch (const nlohmann::ordered_json::exception& e) {
    throw ArgumentError(std::string("malformed roots JSON: ") + e.what());
  }
  const PolySystem hom = homogenize(sys);
  bool all_ok = true;
  int index = 0;
  for (const auto& r : claimed) {
    const PolySystem& target = r.homogeneous ? hom : sys;
    if (r.coords.size() != target.num_vars()) {
      throw ArgumentError("root " + std::to_string(index + 1) + " has " + std::to_string(r.coords.size()) +
                          " coordinates, expected " + std::to_string(target.num_vars()));
    }
    out << "root " << ++index << ":";
    bool root_ok = true;
    for (std::size_t i = 0; i < target.size(); ++i) {
      const double res = std::abs(evaluate(target[i], r.coords));
      root_ok = root_ok && res <= o.residual_tol;
      out << " f" << (i + 1) << ' ' << format_number(res);
    }
    out << (root_ok ? " ok" : " FAIL") << '\n';
    all_ok = all_ok && root_ok;
  }
  return all_ok ? ok : verification_failure;
}

int cmd_macaulay(const Options& o, std::ostream& out) {
  const PolySystem sys = load_system(o.file);
  int d = 0;
  if (o.degree) {
    d = *o.degree;
  } else {
    d = sys.is_square() ? default_degree(sys) : sys.max_degree();
  }
  write_csv(out, build_macaulay(sys, d), sys);
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial system solving and n-D realization through Macaulay null spaces", "polyreal"};
  app.require_subcommand(1);
  Options o;

  auto* solve_cmd = app.add_subcommand("solve", "Compute affine roots and roots at infinity");
  add_solve_options(solve_cmd, o);
  solve_cmd->add_flag("--json", o.json, "Emit the versioned JSON report");

  auto* realize_cmd = app.add_subcommand("realize", "State-space realization of the difference equations");
  add_solve_options(realize_cmd, o);
  realize_cmd->add_flag("--json", o.json, "Emit the versioned JSON report");
  realize_cmd->add_option("--x0", o.x0, "Initial state, comma separated")->delimiter(',');

  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the realization on a grid and check it");
  add_solve_options(simulate_cmd, o);
  simulate_cmd->add_option("--extents", o.extents, "Grid extents per axis, comma separated")
      ->delimiter(',')
      ->required();
  simulate_cmd->add_option("--x0", o.x0, "Initial state, comma separated")->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "Evaluate claimed roots from a JSON file");
  verify_cmd->add_option("file", o.file, "Polynomial system file")->required();
  verify_cmd->add_option("roots", o.roots_file, "JSON report or array of roots")->required();
  verify_cmd->add_option("--residual-tol", o.residual_tol, "Largest accepted residual");

  auto* macaulay_cmd = app.add_subcommand("macaulay", "Print the Macaulay matrix as CSV");
  macaulay_cmd->add_option("file", o.file, "Polynomial system file")->required();
  macaulay_cmd->add_option("--degree", o.degree, "Macaulay degree");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  const bool realization_command = realize_cmd->parsed() || simulate_cmd->parsed();
  try {
    if (solve_cmd->parsed()) return cmd_solve(o, out);
    if (realize_cmd->parsed()) return cmd_realize(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    return cmd_macaulay(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return input_error;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const NoStabilizationError& e) {
    err << "no stabilization: " << e.what() << '\n';
    return no_stabilization;
  } catch (const RealizationError& e) {
    err << "realization failed: " << e.what() << '\n';
    return realization_failure;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return realization_command ? realization_failure : no_stabilization;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }
}

}  // namespace polyreal::cli
