#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include "reig/core/numeric.hpp"
#include "reig/core/random.hpp"

namespace reig {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(Philox, MatchesPublishedKnownAnswers) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, EqualKeysReplay) {
  RandomStream a = substream(RandomStream(7), 0);
  RandomStream b = substream(RandomStream(7), 0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b());
}

TEST(RandomStream, DistinctIndicesDiffer) {
  RandomStream a = substream(RandomStream(7), 0);
  RandomStream b = substream(RandomStream(7), 1);
  EXPECT_NE(a(), b());
  EXPECT_NE(RandomStream(7, 0)(), RandomStream(8, 0)());
}

TEST(RandomStream, SubstreamsDoNotCollide) {
  std::set<std::uint64_t> first;
  const RandomStream root(123);
  for (std::uint64_t i = 0; i < 2000; ++i) first.insert(root.substream(i)());
  for (std::uint64_t i = 0; i < 200; ++i) first.insert(root.substream(0).substream(i)());
  EXPECT_EQ(first.size(), 2200u);
}

TEST(RandomStream, IndependentOfThreadCount) {
  auto draw = [] {
    RandomStream s = substream(RandomStream(7), 3);
    std::vector<double> v(256);
    for (double& x : v) x = s.normal();
    return v;
  };
  const auto reference = draw();
  std::vector<std::vector<double>> results(8);
  std::vector<std::thread> threads;
  for (auto& r : results) threads.emplace_back([&r, &draw] { r = draw(); });
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, reference);
}

TEST(RandomStream, UniformIsOpenUnitInterval) {
  RandomStream s(1);
  double lo = 1.0;
  double hi = 0.0;
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(StandardNormalDraws, EmptyRequest) {
  RandomStream s(3);
  EXPECT_TRUE(standard_normal_draws(s, 0).empty());
}

TEST(StandardNormalDraws, Moments) {
  RandomStream s(3);
  const auto v = standard_normal_draws(s, 100000);
  ASSERT_EQ(v.size(), 100000u);
  EXPECT_LT(std::abs(mean(v)), 0.02);
  EXPECT_LT(std::abs(sample_variance(v) - 1.0), 0.03);
}

TEST(LogMeanExp, Examples) {
  EXPECT_DOUBLE_EQ(log_mean_exp(std::vector<double>{-1, -1, -1}), -1.0);
  EXPECT_NEAR(log_mean_exp(std::vector<double>{0, -kInf}), std::log(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(log_mean_exp(std::vector<double>{1000, 1000}), 1000.0);
  EXPECT_EQ(log_mean_exp(std::vector<double>{-kInf, -kInf}), -kInf);
}

TEST(LogMeanExp, Errors) {
  EXPECT_THROW(log_mean_exp(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(LogWeightVector({}), std::invalid_argument);
  EXPECT_THROW(LogWeightVector({0.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(LogWeightVector({kInf}), std::invalid_argument);
  EXPECT_DOUBLE_EQ(log_mean_exp(LogWeightVector({2.0, 2.0})), 2.0);
}

TEST(LogMeanExp, ShiftAndRangeProperties) {
  RandomStream s(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + s() % 50;
    std::vector<double> v(n);
    for (double& x : v) x = 50.0 * s.normal();
    const double c = 300.0 * s.normal();
    std::vector<double> shifted = v;
    for (double& x : shifted) x += c;
    const double base = log_mean_exp(v);
    EXPECT_NEAR(log_mean_exp(shifted), base + c, 1e-12 * (1.0 + std::abs(base + c)));
    const double top = *std::max_element(v.begin(), v.end());
    EXPECT_LE(base, top + 1e-12);
    EXPECT_GE(base, top - std::log(static_cast<double>(n)) - 1e-12);
  }
}

TEST(LogWeightedSumExp, SkipsZeroWeights) {
  const std::vector<double> v{0.0, 5.0, -kInf};
  const std::vector<double> w{0.25, 0.0, 0.75};
  EXPECT_NEAR(log_weighted_sum_exp(v, w), std::log(0.25), 1e-15);
}

TEST(Mean, ConstantInputsAreExact) {
  const std::vector<double> v(1000, -std::exp(-1.0));
  EXPECT_EQ(mean(v), -std::exp(-1.0));
  const std::vector<double> w(1000, 0.37);
  EXPECT_EQ(weighted_mean(v, w), -std::exp(-1.0));
}

TEST(NormalLogCdf, MatchesHighPrecisionReferences) {
  const std::vector<std::pair<double, double>> ref{
      {-40.0, -804.60844201375378817}, {-30.5, -469.46273732291211439}, {-29.9, -451.32291245852863447},
      {-10.0, -53.231285150512470578}, {-1.0, -1.8410216450092635058}, {0.0, -0.69314718055994530942},
      {2.0, -0.023012909328963488465}, {8.0, -6.2209605742717860585e-16}};
  for (const auto& [z, expected] : ref) {
    EXPECT_NEAR(normal_log_cdf(z), expected, 1e-12 * std::abs(expected)) << "z = " << z;
  }
  EXPECT_EQ(normal_log_cdf(40.0), 0.0);
  for (double z : {-35.0, -3.0, 0.5, 4.0}) EXPECT_DOUBLE_EQ(normal_log_survival(z), normal_log_cdf(-z));
}

TEST(NormalLogPdf, StandardValue) {
  EXPECT_NEAR(normal_log_pdf(0.0, 0.0, 1.0), -0.91893853320467274178, 1e-15);
  EXPECT_NEAR(normal_log_pdf(3.0, 1.0, 2.0), -0.91893853320467274178 - std::log(2.0) - 0.5, 1e-15);
}

TEST(Scalars, LogitSigmoidEntropy) {
  for (double p : {1e-9, 0.2, 0.5, 0.9}) EXPECT_NEAR(sigmoid(logit(p)), p, 1e-15);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), std::log(2.0));
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 42) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

}  // namespace
}  // namespace reig
