#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ptw/atypicality.hpp"
#include "ptw/pattern_tree.hpp"
#include "ptw/predictor.hpp"
#include "ptw/synth.hpp"

namespace {

std::vector<double> gaussian_series(std::size_t n, double sigma2 = 4.0) {
  return ptw::gen_gaussian(n, 0.0, sigma2, 1234);
}

void BM_PredictOp(benchmark::State& state) {
  ptw::GaussianStats s{1000, 0.0, 999.0 * 4.0};
  double x = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptw::predict_op(s, x, 1e-8).log2_density);
    x = -x;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PredictOp);

void BM_PredictSs(benchmark::State& state) {
  ptw::GaussianStats s{1000, 0.0, 999.0 * 4.0};
  double x = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptw::predict_ss(s, x, 1e-8).log2_density);
    x = -x;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PredictSs);

// Per-sample coder cost is O(depth); range documents the slope.
void BM_TreeUpdate(benchmark::State& state) {
  const auto depth = static_cast<std::uint32_t>(state.range(0));
  const auto xs = gaussian_series(1 << 14);
  std::vector<double> ctx(xs.begin(), xs.begin() + depth);
  ptw::PatternTree tree(depth, ctx, ptw::PredictorKind::Ss, 1e-8);
  std::size_t i = depth;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree.update(xs[i]));
    if (++i == xs.size()) i = depth;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TreeUpdate)->DenseRange(0, 12, 2);

void BM_Scan(benchmark::State& state) {
  const auto series = gaussian_series(2000);
  const auto train = gaussian_series(4000);
  ptw::PatternTree typical(3, std::vector<double>(train.begin(), train.begin() + 3),
                           ptw::PredictorKind::Ss, 4e-8);
  for (std::size_t i = 3; i < train.size(); ++i) typical.update(train[i]);
  typical.freeze();

  ptw::ScanConfig cfg;
  cfg.stride = 10;
  cfg.max_len = 100;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptw::scan(series, typical, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(series.size()));
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
