#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace horo::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_budget = 3;

/// Everything one invocation needs. Filled from flags and an optional
/// key-value config file (--config).
struct RunConfig {
  /// Subcommand path, e.g. {"nd"} or {"verify", "tangency"}.
  std::vector<std::string> command;

  // Descriptors
  std::string group = "z2-l1";
  std::string weights;
  std::string system = "ledrappier";
  std::string base = "full-shift:2";
  std::string horofunction;
  std::string vectors;
  std::string sets;
  std::string report;

  // Parameters
  int k = 3;
  std::optional<double> epsilon;
  std::int64_t window = 6;
  std::string grid = "farey:8+diag";
  std::string method = "auto";
  std::string direction;
  std::string centers;
  std::optional<std::int64_t> index;
  std::string center;
  std::string point;
  std::string ray = "1,0";
  std::string ns;
  std::optional<double> radius;
  std::string radii = "1";
  double search_bound = 20;
  bool closed = false;
  std::string norm = "l1";
  std::size_t directions = 10000;
  double m = 5;
  double eps = 0.5;
  std::int64_t n_max = 200;
  std::string cone = "1,-1;1,1";
  double eta = 1;
  std::string shift = "-2,0";
  std::int64_t r_max = 50;
  bool skip_precondition = false;
  std::int64_t alpha = 1;
  std::int64_t beta = -2;
  std::int64_t t_max = 5;
  std::size_t probes = 100;
  bool random_probes = false;
  std::int64_t cutoff = 3;
  int dimension = 1;
  std::uint64_t budget = 0;  // 0: the command's default

  // Outputs
  std::string out;
  std::string svg;
  std::uint64_t seed = 1;
};

/// Parses argv-style arguments (without the program name) and runs the
/// command. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs a parsed configuration. Throws InputError for invalid values.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace horo::cli
