#include <random>

#include <benchmark/benchmark.h>

#include "hypconvex/decomposition.hpp"
#include "hypconvex/dynamics.hpp"
#include "hypconvex/metrics.hpp"

namespace {

using namespace hypconvex;

DomainSpec random_domain(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CVector w(static_cast<Eigen::Index>(n));
  for (auto& x : w) x = {g(rng), g(rng)};
  std::vector<HalfSpace> hs;
  for (std::size_t j = 0; j < m; ++j) {
    CVector c(static_cast<Eigen::Index>(n));
    for (auto& x : c) x = {g(rng), g(rng)};
    CFunctional f(c);
    hs.push_back({f, f(w).real() - 1.0});
  }
  return DomainSpec(n, std::move(hs), w);
}

void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = random_domain(n, 2 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(d));
}
BENCHMARK(BM_Decompose)->Arg(2)->Arg(5)->Arg(10);

void BM_CaraLower(benchmark::State& state) {
  const auto d = random_domain(3, 8, 2);
  const CVector w = d.witness() * 1.0;
  CVector z = d.witness();
  z[0] += 0.01;
  while (!is_interior(d, z)) z[0] = 0.5 * (z[0] + d.witness()[0]);
  for (auto _ : state) benchmark::DoNotOptimize(cara_lower(d, z, w));
}
BENCHMARK(BM_CaraLower);

void BM_ChainUpper(benchmark::State& state) {
  const DomainSpec hp(1, {{CFunctional(CVector::Ones(1)), 0.0}}, CVector::Ones(1));
  const CVector z = CVector::Ones(1), w = CVector::Constant(1, 3.0);
  for (auto _ : state) benchmark::DoNotOptimize(chain_upper(hp, z, w, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ChainUpper)->Arg(1 << 10)->Arg(1 << 14);

void BM_DistanceBracket(benchmark::State& state) {
  const auto d = random_domain(2, 5, 3);
  CVector w = d.witness();
  w[1] += Cplx{0.05, 0.02};
  while (!is_interior(d, w)) w[1] = 0.5 * (w[1] + d.witness()[1]);
  for (auto _ : state) benchmark::DoNotOptimize(distance_bracket(d, d.witness(), w));
}
BENCHMARK(BM_DistanceBracket);

void BM_IterateExpTranslation(benchmark::State& state) {
  const DomainSpec d(2, {{CFunctional((CVector(2) << 1.0, 0.0).finished()), 0.0}},
                     (CVector(2) << 1.0, 0.0).finished());
  const auto f = exp_translation_map(1, 1);
  CVector p(2);
  p << 1.0, exp_translation_period_two_point();
  for (auto _ : state) benchmark::DoNotOptimize(iterate(f, p, 16, d));
}
BENCHMARK(BM_IterateExpTranslation);

}  // namespace
BENCHMARK_MAIN();
