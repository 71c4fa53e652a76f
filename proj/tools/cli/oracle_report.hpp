#pragma once

#include <string>
#include <vector>

#include "csv.hpp"

namespace reig::cli {

struct OracleReportOptions {
  /// Models whose checks run; empty is a usage error.
  std::vector<std::string> models = {"diagnostic", "ab", "preference", "pk", "independent"};
  /// Allowed gap between the weighted dual and the grid search.
  double dual_tolerance = 1e-5;
};

struct OracleReport {
  Table table;
  std::size_t failed = 0;
};

/// Runs every closed-form cross-check for the selected models. Throws
/// ConfigError on an empty or unknown model list.
OracleReport oracle_report(const OracleReportOptions& options);

}  // namespace reig::cli
