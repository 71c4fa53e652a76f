#include "reig/core/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace reig {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogWeightVector::LogWeightVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("LogWeightVector: empty");
  for (double v : values_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("LogWeightVector: NaN or +inf entry");
    }
  }
}

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  const double top = *std::max_element(v.begin(), v.end());
  if (top == kNegInf) return kNegInf;
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - top);
  return top + std::log(sum);
}

double log_mean_exp(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("log_mean_exp: empty input");
  const double top = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - top);
  // dividing before the log keeps equal inputs exact
  return top + std::log(sum / static_cast<double>(v.size()));
}

double log_mean_exp(const LogWeightVector& v) { return log_mean_exp(v.values()); }

double log_weighted_sum_exp(std::span<const double> v, std::span<const double> w) {
  if (v.empty()) throw std::invalid_argument("log_weighted_sum_exp: empty input");
  if (v.size() != w.size()) throw std::invalid_argument("log_weighted_sum_exp: size mismatch");
  double top = kNegInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] > 0.0) top = std::max(top, v[i]);
  }
  if (top == kNegInf) return kNegInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] > 0.0) sum += w[i] * std::exp(v[i] - top);
  }
  return top + std::log(sum);
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  // Shifting by the first entry keeps constant inputs exact.
  const double x0 = v.front();
  double s = 0.0;
  for (double x : v) s += x - x0;
  return x0 + s / static_cast<double>(v.size());
}

double weighted_mean(std::span<const double> v, std::span<const double> w) {
  if (v.empty() || v.size() != w.size()) throw std::invalid_argument("weighted_mean: bad sizes");
  double x0 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] != 0.0) {
      x0 = v[i];
      break;
    }
  }
  double s = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] == 0.0) continue;
    s += w[i] * (v[i] - x0);
    total += w[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("weighted_mean: weights sum to zero");
  return x0 + s / total;
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double normal_log_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * std::numbers::pi);
}

double normal_log_cdf(double z) {
  if (z > 0.0) return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
  if (z > -30.0) return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
  // Mills-ratio asymptotic series, truncation error ~1e-12 relative at z = -30.
  const double u = 1.0 / (z * z);
  const double series = 1.0 - u * (1.0 - 3.0 * u * (1.0 - 5.0 * u * (1.0 - 7.0 * u)));
  return -0.5 * z * z - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double normal_log_survival(double z) { return normal_log_cdf(-z); }

double logit(double p) { return std::log(p) - std::log1p(-p); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (n == 0) return;
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace reig
