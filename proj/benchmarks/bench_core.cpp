#include <benchmark/benchmark.h>

#include "memeflow/competition.hpp"
#include "memeflow/dynamics.hpp"
#include "memeflow/features.hpp"
#include "memeflow/fitting.hpp"
#include "memeflow/rng.hpp"

namespace {

using namespace memeflow;

void BM_integrate(benchmark::State& state) {
  const LogisticParams p{1.0, 1.0, 0.01};
  const double t_end = 20.0;
  const double step = t_end / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p, t_end, step));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_integrate)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_fit_logistic(benchmark::State& state) {
  const LogisticParams truth{0.8, 5.0, 0.05};
  TimeSeries series;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 15.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    series.samples.push_back({t, logistic_closed_form(t, truth)});
  }
  series = with_noise(series, 0.05, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_logistic(series));
  }
}
BENCHMARK(BM_fit_logistic)->Arg(100)->Arg(1000);

void BM_fit_exponential(benchmark::State& state) {
  TimeSeries series;
  const auto n = static_cast<std::size_t>(state.range(0));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    series.samples.push_back({t, exponential_solution(t, 0.5, 0.1)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_exponential(series));
  }
}
BENCHMARK(BM_fit_exponential)->Arg(100)->Arg(1000);

void BM_column_entropy(benchmark::State& state) {
  SeededRng rng(42);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(column_entropy(values, 16));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_column_entropy)->Arg(1000)->Arg(100000);

void BM_integrate_competition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CompetitionSystem sys;
  sys.affinities.assign(n, 1.0);
  sys.delta_es.assign(n, 1.0);
  sys.alpha = Matrix(n, n, 0.1);
  for (std::size_t i = 0; i < n; ++i) sys.alpha(i, i) = 1.0;
  sys.normalized = true;
  const StateVector y0(n, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_competition(sys, y0, 50.0, 0.01));
  }
}
BENCHMARK(BM_integrate_competition)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
