#pragma once

#include <stdexcept>
#include <string>

namespace reig {

/// Rejection sampling exhausted its retry budget.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An inner estimate stayed non-finite after clipping. The message carries
/// the offending outer index and the last inner values seen.
class EstimatorFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Training produced a NaN objective or parameters.
class TrainingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reig
