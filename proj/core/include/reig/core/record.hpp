#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace reig {

/// One persisted estimate: a (model, design, estimator, robust mode, epsilon,
/// budget, seed) cell and its value in nats.
struct EstimateRecord {
  std::string model;
  std::string design;
  std::string estimator;
  std::string robust_mode;
  double epsilon = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double value = 0.0;
  double lambda_star = 0.0;
  std::size_t clip_count = 0;
  double runtime_ms = 0.0;

  friend bool operator==(const EstimateRecord&, const EstimateRecord&) = default;
};

}  // namespace reig
