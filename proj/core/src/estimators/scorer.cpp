#include "reig/estimators/scorer.hpp"

#include <cmath>
#include <stdexcept>

namespace reig {
namespace {

void glorot(Matrix& w, RandomStream& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = limit * (2.0 * rng.uniform() - 1.0);
}

std::vector<double> to_std(const Eigen::Ref<const Vector>& v) { return {v.data(), v.data() + v.size()}; }

Vector from_std(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

ScorerNetwork::ScorerNetwork(Eigen::Index input_dim)
    : w1_(Matrix::Zero(kHidden, input_dim)),
      b1_(Vector::Zero(kHidden)),
      w2_(Matrix::Zero(kHidden, kHidden)),
      b2_(Vector::Zero(kHidden)),
      w3_(Vector::Zero(kHidden)),
      shift_(Vector::Zero(input_dim)),
      scale_(Vector::Ones(input_dim)) {
  if (input_dim < 1) throw std::invalid_argument("scorer network: input_dim must be >= 1");
}

ScorerNetwork ScorerNetwork::random(Eigen::Index input_dim, RandomStream& rng) {
  ScorerNetwork net(input_dim);
  glorot(net.w1_, rng);
  glorot(net.w2_, rng);
  Matrix w3(1, kHidden);
  glorot(w3, rng);
  net.w3_ = w3.transpose();
  return net;
}

ScorerNetwork ScorerNetwork::constant(Eigen::Index input_dim, double value) {
  ScorerNetwork net(input_dim);
  net.b3_ = value;
  return net;
}

Eigen::Index ScorerNetwork::parameter_count() const {
  return w1_.size() + b1_.size() + w2_.size() + b2_.size() + w3_.size() + 1;
}

Vector ScorerNetwork::parameters() const {
  Vector p(parameter_count());
  p << Eigen::Map<const Vector>(w1_.data(), w1_.size()), b1_, Eigen::Map<const Vector>(w2_.data(), w2_.size()), b2_,
      w3_, b3_;
  return p;
}

void ScorerNetwork::set_parameters(const Vector& p) {
  if (p.size() != parameter_count()) throw std::invalid_argument("scorer network: wrong parameter count");
  Eigen::Index at = 0;
  auto take = [&](double* dst, Eigen::Index n) {
    Eigen::Map<Vector>(dst, n) = p.segment(at, n);
    at += n;
  };
  take(w1_.data(), w1_.size());
  take(b1_.data(), b1_.size());
  take(w2_.data(), w2_.size());
  take(b2_.data(), b2_.size());
  take(w3_.data(), w3_.size());
  b3_ = p[at];
}

void ScorerNetwork::set_standardization(Vector shift, Vector scale) {
  if (shift.size() != input_dim() || scale.size() != input_dim() || !(scale.array() > 0.0).all()) {
    throw std::invalid_argument("scorer network: bad standardization");
  }
  shift_ = std::move(shift);
  scale_ = std::move(scale);
}

double ScorerNetwork::operator()(const Vector& input) const {
  Matrix one(input.size(), 1);
  one.col(0) = input;
  return evaluate(one)[0];
}

Vector ScorerNetwork::evaluate(const Matrix& inputs) const {
  const Matrix x = (inputs.colwise() - shift_).array().colwise() / scale_.array();
  const Matrix h1 = ((w1_ * x).colwise() + b1_).array().tanh();
  const Matrix h2 = ((w2_ * h1).colwise() + b2_).array().tanh();
  return (h2.transpose() * w3_).array() + b3_;
}

Vector ScorerNetwork::backprop(const Matrix& inputs, const Vector& c) const {
  const Matrix x = (inputs.colwise() - shift_).array().colwise() / scale_.array();
  const Matrix h1 = ((w1_ * x).colwise() + b1_).array().tanh();
  const Matrix h2 = ((w2_ * h1).colwise() + b2_).array().tanh();

  const Vector g_w3 = h2 * c;
  const double g_b3 = c.sum();
  const Matrix delta2 = ((w3_ * c.transpose()).array() * (1.0 - h2.array().square())).matrix();
  const Matrix g_w2 = delta2 * h1.transpose();
  const Vector g_b2 = delta2.rowwise().sum();
  const Matrix delta1 = ((w2_.transpose() * delta2).array() * (1.0 - h1.array().square())).matrix();
  const Matrix g_w1 = delta1 * x.transpose();
  const Vector g_b1 = delta1.rowwise().sum();

  Vector g(parameter_count());
  g << Eigen::Map<const Vector>(g_w1.data(), g_w1.size()), g_b1, Eigen::Map<const Vector>(g_w2.data(), g_w2.size()),
      g_b2, g_w3, g_b3;
  return g;
}

bool ScorerNetwork::all_finite() const {
  return w1_.allFinite() && b1_.allFinite() && w2_.allFinite() && b2_.allFinite() && w3_.allFinite() &&
         std::isfinite(b3_);
}

nlohmann::json ScorerNetwork::to_json() const {
  return {{"input_dim", input_dim()},
          {"parameters", to_std(parameters())},
          {"shift", to_std(shift_)},
          {"scale", to_std(scale_)}};
}

ScorerNetwork ScorerNetwork::from_json(const nlohmann::json& j) {
  try {
    ScorerNetwork net(j.at("input_dim").get<Eigen::Index>());
    net.set_parameters(from_std(j.at("parameters").get<std::vector<double>>()));
    net.set_standardization(from_std(j.at("shift").get<std::vector<double>>()),
                            from_std(j.at("scale").get<std::vector<double>>()));
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scorer network JSON: ") + e.what());
  }
}

}  // namespace reig
