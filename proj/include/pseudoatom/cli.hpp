#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pseudoatom/model.hpp"
#include "pseudoatom/spectra.hpp"
#include "pseudoatom/units.hpp"

namespace pseudoatom::cli {

  enum class OutputFormat { Text, Csv, Json };

  /// Exit-status contract of the command-line tool.
  enum ExitStatus : int {
    exit_ok = 0,
    exit_comparison_failed = 1, ///< a golden comparison or convergence check failed, or the solver broke down
    exit_usage = 2              ///< bad flags, config file or physical inputs
  };

  struct RunConfig {
    spectra::BasisSettings basis;
    UnitSystem units = UnitSystem::paper_compat();
    PotentialModel model = PotentialModel::SymmetryDependent;
    OutputFormat format = OutputFormat::Text;
    std::string out_path;       // empty: standard output
    int mg_permutations = 3;    // m for magnesium
    std::string reference_path; // empty: compiled-in tables
  };

  /// Recognized keys (file spelling): splines, order, rmax, knots, rfirst,
  /// quad_nodes, units, model, format, out, mg_mn, reference. Dashes and
  /// underscores are interchangeable.
  const std::vector<std::string>& config_keys();

  /// Sets one field; throws ConfigError naming the field on a bad value or unknown key.
  void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

  /// Parses `key = value` lines with '#' comments. A file without any
  /// setting is rejected.
  std::map<std::string, std::string> parse_config_text(std::string_view text);

  /// Cross-field checks (spline count against order, r_first against r_max, ...).
  void validate(const RunConfig& config);

  /// Defaults, then the config file, then the flags.
  RunConfig resolve_config(const std::map<std::string, std::string>& file_settings,
                           const std::map<std::string, std::string>& flag_settings);

  /// Entry point shared by the executable and the tests. Output goes to `out`
  /// unless --out names a file; diagnostics go to `err`.
  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pseudoatom::cli
