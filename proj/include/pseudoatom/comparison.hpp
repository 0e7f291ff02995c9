#pragma once

#include <span>
#include <string>
#include <vector>

#include "pseudoatom/spectra.hpp"

namespace pseudoatom {

  struct GoldenValue {
    std::string label;
    double value = 0.0;
  };

  struct ComparisonRow {
    std::string label;
    double computed = 0.0;
    double golden = 0.0;
    double deviation = 0.0; // |computed - golden|
    bool pass = false;
  };

  struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    double tolerance = 0.0;
    double max_deviation = 0.0;
    double mean_deviation = 0.0;
    std::size_t failures = 0;

    bool all_pass() const { return failures == 0; }
    std::vector<std::string> failed_labels() const;
  };

  /// Row-by-row comparison; labels must match in order (std::invalid_argument otherwise).
  ComparisonReport compare(std::span<const spectra::TableRow> computed, std::span<const GoldenValue> golden,
                           double tolerance_ev);

} // namespace pseudoatom
