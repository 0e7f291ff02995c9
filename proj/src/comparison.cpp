#include "pseudoatom/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pseudoatom {

  std::vector<std::string> ComparisonReport::failed_labels() const {
    std::vector<std::string> labels;
    for (const auto& row : rows)
      if (!row.pass) labels.push_back(row.label);
    return labels;
  }

  ComparisonReport compare(std::span<const spectra::TableRow> computed, std::span<const GoldenValue> golden,
                           double tolerance_ev) {
    if (computed.size() != golden.size())
      throw std::invalid_argument("computed and golden tables have different row counts");
    if (!(tolerance_ev >= 0.0)) throw std::invalid_argument("tolerance must be non-negative");

    ComparisonReport report;
    report.tolerance = tolerance_ev;
    double sum = 0.0;
    for (std::size_t i = 0; i < computed.size(); ++i) {
      if (computed[i].label != golden[i].label)
        throw std::invalid_argument("row " + std::to_string(i) + ": label '" + computed[i].label +
                                    "' does not match golden '" + golden[i].label + "'");
      ComparisonRow row{computed[i].label, computed[i].value_ev, golden[i].value, 0.0, false};
      row.deviation = std::abs(row.computed - row.golden);
      row.pass = row.deviation <= tolerance_ev;
      if (!row.pass) ++report.failures;
      report.max_deviation = std::max(report.max_deviation, row.deviation);
      sum += row.deviation;
      report.rows.push_back(std::move(row));
    }
    if (!report.rows.empty()) report.mean_deviation = sum / static_cast<double>(report.rows.size());
    return report;
  }

} // namespace pseudoatom
