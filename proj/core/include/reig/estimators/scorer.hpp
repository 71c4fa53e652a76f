#pragma once

#include <nlohmann/json.hpp>

#include "reig/core/random.hpp"
#include "reig/models/model.hpp"

namespace reig {

/// Feed-forward scorer T(theta, y): standardized input -> tanh(64) -> tanh(64)
/// -> scalar. Input standardization is fixed data, not a trained parameter.
class ScorerNetwork {
 public:
  static constexpr Eigen::Index kHidden = 64;

  /// All weights and biases zero, identity standardization.
  explicit ScorerNetwork(Eigen::Index input_dim);

  /// Uniform Glorot initialization.
  static ScorerNetwork random(Eigen::Index input_dim, RandomStream& rng);
  /// Network that outputs `value` for every input.
  static ScorerNetwork constant(Eigen::Index input_dim, double value);

  Eigen::Index input_dim() const { return w1_.cols(); }
  Eigen::Index parameter_count() const;

  /// Flattened (W1, b1, W2, b2, w3, b3), matrices column-major.
  Vector parameters() const;
  void set_parameters(const Vector& params);

  void set_standardization(Vector shift, Vector scale);
  const Vector& shift() const { return shift_; }
  const Vector& scale() const { return scale_; }

  double operator()(const Vector& input) const;
  /// Scores for each column of `inputs` (input_dim x n).
  Vector evaluate(const Matrix& inputs) const;
  /// Gradient in parameters of sum_k output_weights[k] * T(inputs.col(k)).
  Vector backprop(const Matrix& inputs, const Vector& output_weights) const;

  bool all_finite() const;

  nlohmann::json to_json() const;
  static ScorerNetwork from_json(const nlohmann::json& j);

 private:
  Matrix w1_;
  Vector b1_;
  Matrix w2_;
  Vector b2_;
  Vector w3_;
  double b3_ = 0.0;
  Vector shift_;
  Vector scale_;
};

}  // namespace reig
