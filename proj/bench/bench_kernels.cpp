// Serial reference vs OpenMP kernels. Arg(0) is serial, Arg(1) parallel.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "cantor/geometry.hpp"
#include "cantor/jacobi.hpp"
#include "cantor/kernels.hpp"

using namespace cantor;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::Serial : ExecPolicy::Parallel;
}

const JacobiMatrix<double>& sixth_matrix() {
  static const auto j = jacobi_for_gamma<double>(MapFamily(GammaSequence::constant("1/6")), 256).matrix;
  return j;
}

void BM_BisectEigenvalues(benchmark::State& state) {
  const auto& j = sixth_matrix();
  const auto n = static_cast<std::size_t>(state.range(1));
  const std::span<const double> diag(j.b.data(), n);
  const std::span<const double> off(j.a.data(), n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::bisect_eigenvalues<double>(diag, off, 0.0, 1200, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_BisectEigenvalues)->ArgsProduct({{0, 1}, {64, 256}})->Unit(benchmark::kMillisecond);

void BM_BisectEigenvaluesDD(benchmark::State& state) {
  const auto wide = widen(sixth_matrix());
  const auto n = static_cast<std::size_t>(state.range(1));
  const std::span<const DoubleDouble> diag(wide.b.data(), n);
  const std::span<const DoubleDouble> off(wide.a.data(), n - 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::bisect_eigenvalues<DoubleDouble>(diag, off, DoubleDouble(0.0), 2400, policy_of(state)));
}
BENCHMARK(BM_BisectEigenvaluesDD)->ArgsProduct({{0, 1}, {64}})->Unit(benchmark::kMillisecond);

void BM_BranchPullback(benchmark::State& state) {
  const auto gamma = GammaSequence::parse("periodic:1/6,1/5");
  const int level = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::branch_pullback(gamma, level, 0.0, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << level));
}
BENCHMARK(BM_BranchPullback)->ArgsProduct({{0, 1}, {12, 18}})->Unit(benchmark::kMillisecond);

void BM_Dot(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> x(static_cast<std::size_t>(state.range(1))), y(x.size());
  for (auto& v : x) v = u(rng);
  for (auto& v : y) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::dot<double>(x, y, policy_of(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_Dot)->ArgsProduct({{0, 1}, {1 << 12, 1 << 20}});

}  // namespace

BENCHMARK_MAIN();
