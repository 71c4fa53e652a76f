#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace reig {

/// Log-domain values: entries may be -inf, never NaN or +inf, at least one entry.
class LogWeightVector {
 public:
  explicit LogWeightVector(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

/// log(sum_i exp(v_i)), max-shifted. Returns -inf iff every entry is -inf.
/// Throws std::invalid_argument on empty input.
double log_sum_exp(std::span<const double> v);

/// log((1/N) sum_i exp(v_i)).
double log_mean_exp(std::span<const double> v);
double log_mean_exp(const LogWeightVector& v);

/// log(sum_i w_i exp(v_i)) for nonnegative weights w (need not be normalized).
double log_weighted_sum_exp(std::span<const double> v, std::span<const double> w);

double mean(std::span<const double> v);
/// Weighted mean with weights summing to anything positive.
double weighted_mean(std::span<const double> v, std::span<const double> w);
/// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> v);

double normal_log_pdf(double x, double mean, double sd);
/// log Phi(z), accurate far into the lower tail.
double normal_log_cdf(double z);
/// log(1 - Phi(z)).
double normal_log_survival(double z);

double logit(double p);
double sigmoid(double x);

/// Binary entropy in nats; H(0) = H(1) = 0.
double binary_entropy(double p);

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
/// visited exactly once; the body must only write to per-index state.
/// The first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace reig
