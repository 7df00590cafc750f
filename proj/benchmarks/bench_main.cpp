#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "allometry/analysis.hpp"
#include "allometry/growth_curves.hpp"
#include "allometry/inference.hpp"
#include "allometry/synthetic.hpp"

namespace {

using namespace allometry;

void BM_LogisticEval(benchmark::State& state) {
  const LogisticCurve curve(100.0, 0.5, 10.0);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(logistic_eval(curve, t));
    t += 0.25;
  }
}
BENCHMARK(BM_LogisticEval);

void BM_StudentTCdf(benchmark::State& state) {
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(student_t_cdf(t, 21));
    t = t >= 5.0 ? -5.0 : t + 0.01;
  }
}
BENCHMARK(BM_StudentTCdf);

void BM_OlsFit(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = uni(rng);
    y[i] = 0.4 + 0.8 * x[i] + 0.05 * uni(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ols_fit(x, y));
}
BENCHMARK(BM_OlsFit)->Arg(20)->Arg(200)->Arg(2000);

void BM_FitLogistic(benchmark::State& state) {
  GrowthSeries series;
  series.entity = "bench";
  const LogisticCurve curve(100.0, 0.3, 12.0);
  for (int year = 0; year <= 24; ++year)
    series.observations.push_back({year, logistic_eval(curve, year)});
  for (auto _ : state) benchmark::DoNotOptimize(fit_logistic(series));
}
BENCHMARK(BM_FitLogistic);

void BM_AnalyzeSyntheticPanel(benchmark::State& state) {
  ScenarioSpec spec;
  spec.curve_y = {100.0, 0.15, 12.0};
  spec.curve_x = {100.0, 0.30, 12.0};
  spec.noise_sd = 0.005;
  spec.seed = 42;
  auto [target, reference] = generate(spec);
  const Panel panel = {target, reference};
  AnalysisConfig config;
  config.reference = "reference";
  for (auto _ : state) benchmark::DoNotOptimize(analyze(panel, config));
}
BENCHMARK(BM_AnalyzeSyntheticPanel);

}  // namespace

BENCHMARK_MAIN();
