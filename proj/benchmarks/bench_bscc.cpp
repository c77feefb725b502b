#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bscc/banded.hpp"
#include "bscc/experiments.hpp"
#include "bscc/knots.hpp"
#include "bscc/pipeline.hpp"
#include "bscc/spline_fit.hpp"

namespace {

std::vector<double> uniform_nodes(int m) {
  std::vector<double> nodes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / (m - 1);
  }
  return nodes;
}

void BM_BasisValue(benchmark::State& state) {
  const auto nodes = uniform_nodes(static_cast<int>(state.range(0)));
  const bscc::KnotVector kv = bscc::make_clamped_knots(nodes, 3);
  double z = 0.0;
  for (auto _ : state) {
    z = z < 0.99 ? z + 0.01 : 0.0;
    const bscc::BasisIndexRange r = bscc::active_basis_range(kv, 3, z);
    for (int j = r.lo; j <= r.hi; ++j) {
      benchmark::DoNotOptimize(bscc::basis_value(kv, j, 3, z));
    }
  }
}
BENCHMARK(BM_BasisValue)->Arg(16)->Arg(128)->Arg(1024);

void BM_BandedFactorSolve(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const bscc::BandedMatrix sys = bscc::build_square_system(uniform_nodes(m));
  std::vector<double> rhs(static_cast<std::size_t>(sys.order()), 1.0);
  for (auto _ : state) {
    const bscc::BandedLU lu = bscc::banded_lu_factor(sys);
    benchmark::DoNotOptimize(lu.solve(rhs));
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_BandedFactorSolve)
    ->RangeMultiplier(4)
    ->Range(64, 16384)
    ->Complexity(benchmark::oN);

void BM_FitNaturalCubic(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto nodes = uniform_nodes(m);
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    values[i] = std::sin(6.0 * nodes[i]);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bscc::fit_natural_cubic(nodes, {values}));
  }
}
BENCHMARK(BM_FitNaturalCubic)->Arg(100)->Arg(1000);

void BM_PairedTrial(benchmark::State& state) {
  bscc::ExperimentConfig cfg;
  cfg.n = 100;
  cfg.k = 8;
  cfg.block_rows = 5;
  cfg.block_cols = 5;
  cfg.trials = 1;
  cfg.seed = 1;
  const int s = static_cast<int>(state.range(0));
  int trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bscc::run_trial(cfg, bscc::Scheme::Bscc, s, trial));
    benchmark::DoNotOptimize(bscc::run_trial(cfg, bscc::Scheme::Bacc, s, trial));
    ++trial;
  }
}
BENCHMARK(BM_PairedTrial)->Arg(0)->Arg(20)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
