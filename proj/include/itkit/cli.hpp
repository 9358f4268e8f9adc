#pragma once

// Command-line front end. Config files are line based:
//
//   # comment
//   key = value
//   key = 1.0, 2.0, 3.0
//
// Every command declares the keys it understands and rejects the rest.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "itkit/error.hpp"

namespace itkit::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3, kNumerical = 4 };

int exit_code(ErrorKind kind) noexcept;

struct ScenarioConfig {
  std::string command;
  std::string mode;  // coincidence: simulate | fit
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;  // key -> line in the source
  std::string source;
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
  bool ev = false;  // energies in eV
  bool cm = false;  // macroscopic distances in cm

  bool has(const std::string& key) const { return values.count(key) != 0; }
  /// Throws a config error naming the first key outside `allowed`.
  void allow(const std::set<std::string>& allowed) const;

  double real(const std::string& key) const;
  double real(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;

  /// Energies (E, V0) and macroscopic lengths after the --ev / --cm conversions.
  double energy(const std::string& key, double fallback) const;
  double energy(const std::string& key) const;
  double length(const std::string& key, double fallback) const;
  std::vector<double> lengths(const std::string& key, std::vector<double> fallback) const;

  /// One line "key=value; ..." recording the full config and flags.
  std::string summary() const;
};

ScenarioConfig parse_config(std::istream& is, const std::string& source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

int cmd_it_check(const ScenarioConfig& config, std::ostream& err);
int cmd_delays(const ScenarioConfig& config, std::ostream& err);
int cmd_coincidence(const ScenarioConfig& config, std::ostream& err);
int cmd_xsec(const ScenarioConfig& config, std::ostream& err);
int cmd_greens(const ScenarioConfig& config, std::ostream& err);

/// Dispatches on config.command; library errors become exit codes with a
/// diagnostic on `err`.
int run(const ScenarioConfig& config, std::ostream& err);

/// itkit <command> [mode] --config PATH [--seed N] [--out DIR] [--ev] [--cm]
int main(int argc, char** argv);

}  // namespace itkit::cli
