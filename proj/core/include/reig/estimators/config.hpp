#pragma once

#include <cstddef>
#include <cstdint>

namespace reig {

/// Sample budgets for one estimate. The outer budget N = n1 * n2 is split into
/// n1 parameter draws with n2 outcomes each; m is the inner marginal-likelihood
/// sample count.
struct EstimatorConfig {
  std::size_t n1 = 100;
  std::size_t n2 = 10;
  std::size_t m = 30;
  std::uint64_t seed = 0;
  /// Worker threads for the outer loop. Results do not depend on this.
  unsigned workers = 1;
  /// Replace sampling by exact summation when the model has finite supports.
  bool enumerate = false;

  std::size_t total_outer() const { return n1 * n2; }
};

/// Throws std::invalid_argument unless n1, n2, m >= 1.
void validate(const EstimatorConfig& cfg);

}  // namespace reig
