#include "allometry/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace allometry {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

GrowthSeries growth_rates(const GrowthSeries& series, RateMethod method) {
  require(series.observations.size() >= 2, "rate computation needs at least 2 observations");
  GrowthSeries out;
  out.entity = series.entity;
  out.units = SeriesUnits::rates;
  out.observations.reserve(series.observations.size() - 1);
  for (std::size_t i = 1; i < series.observations.size(); ++i) {
    const double prev = series.observations[i - 1].value;
    const double cur = series.observations[i].value;
    double rate;
    if (method == RateMethod::percent_change) {
      require(prev != 0.0, "percent-change rate needs a non-zero previous level");
      rate = cur / prev - 1.0;
    } else {
      if (!(prev > 0.0 && cur > 0.0))
        throw std::domain_error("log-difference rate needs positive levels");
      rate = std::log(cur / prev);
    }
    out.observations.push_back({series.observations[i].year, rate});
  }
  return out;
}

GrowthSeries moving_average(const GrowthSeries& series, int window) {
  require(window >= 1 && window % 2 == 1, "moving-average window must be odd and positive");
  const std::size_t n = series.observations.size();
  require(static_cast<std::size_t>(window) <= n, "moving-average window exceeds series length");
  const std::size_t half = static_cast<std::size_t>(window) / 2;
  GrowthSeries out;
  out.entity = series.entity;
  out.units = series.units;
  out.observations.reserve(n - static_cast<std::size_t>(window) + 1);
  for (std::size_t center = half; center + half < n; ++center) {
    double sum = 0.0;
    for (std::size_t j = center - half; j <= center + half; ++j)
      sum += series.observations[j].value;
    out.observations.push_back(
        {series.observations[center].year, sum / static_cast<double>(window)});
  }
  return out;
}

GrowthSeries rebase(const GrowthSeries& series, int base_year) {
  const auto it = std::find_if(
      series.observations.begin(), series.observations.end(),
      [base_year](const Observation& obs) { return obs.year == base_year; });
  require(it != series.observations.end(), "base year not present in series");
  require(it->value != 0.0, "base-year level is zero");
  const double base = it->value;
  GrowthSeries out = series;
  for (auto& obs : out.observations) obs.value /= base;
  return out;
}

PairedSample pair_and_log(const GrowthSeries& target, const GrowthSeries& reference) {
  require(target.units == SeriesUnits::rates && reference.units == SeriesUnits::rates,
          "pair_and_log expects rate series");
  std::map<int, double> ref_by_year;
  for (const auto& obs : reference.observations) ref_by_year.emplace(obs.year, obs.value);

  PairedSample sample;
  sample.target_entity = target.entity;
  sample.reference_entity = reference.entity;

  std::map<int, bool> seen_ref_year;  // shared years, to spot unmatched reference years
  bool any_overlap = false;
  for (const auto& obs : target.observations) {
    const auto it = ref_by_year.find(obs.year);
    if (it == ref_by_year.end()) {
      sample.dropped.push_back({obs.year, "unmatched year"});
      continue;
    }
    any_overlap = true;
    seen_ref_year[obs.year] = true;
    if (obs.value > 0.0 && it->second > 0.0)
      sample.pairs.push_back({obs.year, std::log(obs.value), std::log(it->second)});
    else
      sample.dropped.push_back({obs.year, "non-positive rate"});
  }
  for (const auto& obs : reference.observations)
    if (!seen_ref_year.count(obs.year))
      sample.dropped.push_back({obs.year, "unmatched year"});

  require(any_overlap, "no overlapping years between target and reference");
  std::sort(sample.dropped.begin(), sample.dropped.end(),
            [](const DroppedObservation& a, const DroppedObservation& b) {
              return a.year < b.year;
            });
  return sample;
}

GrowthSeries preprocess(const GrowthSeries& levels, const PreprocessConfig& config) {
  GrowthSeries working = levels;
  if (config.rebase_year) working = rebase(working, *config.rebase_year);
  if (config.smooth_order == SmoothOrder::rate_first) {
    working = growth_rates(working, config.rate_method);
    working = moving_average(working, config.ma_window);
  } else {
    working = moving_average(working, config.ma_window);
    working = growth_rates(working, config.rate_method);
  }
  return working;
}

}  // namespace allometry
