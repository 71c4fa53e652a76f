#include <benchmark/benchmark.h>

#include <vector>

#include "reig/core/numeric.hpp"
#include "reig/estimators/nested.hpp"
#include "reig/models/ab_test.hpp"
#include "reig/models/pharmacokinetic.hpp"
#include "reig/robust/dual.hpp"

namespace {

std::vector<double> normal_samples(std::size_t n, std::uint64_t seed) {
  reig::RandomStream rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 + rng.normal();
  return v;
}

void BM_LogMeanExp(benchmark::State& state) {
  const auto v = normal_samples(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(reig::log_mean_exp(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogMeanExp)->RangeMultiplier(10)->Range(10, 100000);

void BM_DualMin(benchmark::State& state) {
  const auto d = normal_samples(static_cast<std::size_t>(state.range(0)), 2);
  const reig::AmbiguityRadius eps(0.05);
  for (auto _ : state) benchmark::DoNotOptimize(reig::dual_min(d, eps).robust_value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DualMin)->RangeMultiplier(10)->Range(10, 100000);

void BM_KlPerThetaAB(benchmark::State& state) {
  const reig::ABTestModel model;
  const reig::PriorProposal q(model);
  reig::EstimatorConfig cfg;
  cfg.n2 = 10;
  cfg.m = static_cast<std::size_t>(state.range(0));
  reig::RandomStream rng(3);
  const reig::Vector theta = model.sample_prior(rng, 1).theta.col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reig::kl_per_theta(model, theta, reig::Design{5.0}, q, cfg, reig::InnerScheme::kNested, rng));
  }
}
BENCHMARK(BM_KlPerThetaAB)->Arg(30)->Arg(100)->Arg(1000);

void BM_KlPerThetaPK(benchmark::State& state) {
  const reig::PKModel model;
  const reig::PriorProposal q(model);
  reig::EstimatorConfig cfg;
  cfg.n2 = 10;
  cfg.m = static_cast<std::size_t>(state.range(0));
  reig::RandomStream rng(4);
  const reig::Vector theta = model.sample_prior(rng, 1).theta.col(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        reig::kl_per_theta(model, theta, reig::Design{1.0}, q, cfg, reig::InnerScheme::kNested, rng));
  }
}
BENCHMARK(BM_KlPerThetaPK)->Arg(30)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
