#pragma once

// Entity-labeled yearly series and the preprocessing chain applied before the
// log-log regression: growth rates, centered moving average, rebasing, and
// pairwise log transform with explicit bookkeeping of dropped observations.

#include <optional>
#include <string>
#include <vector>

namespace allometry {

enum class SeriesUnits { levels, rates };

struct Observation {
  int year;
  double value;
};

struct GrowthSeries {
  std::string entity;
  std::vector<Observation> observations;  // years strictly increasing
  SeriesUnits units = SeriesUnits::levels;
};

enum class RateMethod { percent_change, log_difference };
enum class SmoothOrder { rate_first, level_first };

struct PreprocessConfig {
  RateMethod rate_method = RateMethod::percent_change;
  int ma_window = 3;  // odd, >= 1
  std::optional<int> rebase_year;
  SmoothOrder smooth_order = SmoothOrder::rate_first;
};

struct DroppedObservation {
  int year;
  std::string reason;
};

// Aligned (ln x, ln y) observation pairs after preprocessing. Every input
// year appears exactly once across pairs and dropped.
struct PairedSample {
  struct LogPair {
    int year;
    double ln_y;  // target
    double ln_x;  // reference
  };
  std::string target_entity;
  std::string reference_entity;
  std::vector<LogPair> pairs;
  std::vector<DroppedObservation> dropped;
};

// r_t = value_t/value_{t-1} - 1 (percent_change) or ln(value_t/value_{t-1})
// (log_difference), labeled by the later year. Output has n-1 observations.
GrowthSeries growth_rates(const GrowthSeries& series, RateMethod method);

// Centered arithmetic mean; output length n - window + 1. window must be odd,
// >= 1 and <= the series length.
GrowthSeries moving_average(const GrowthSeries& series, int window);

// Divides every value by the base-year value; the base year maps to 1.
GrowthSeries rebase(const GrowthSeries& series, int base_year);

// Pairs two rate series on common years, taking logs. Years where either
// value <= 0 are dropped with reason "non-positive rate"; years present on
// only one side with reason "unmatched year". Throws when no year is shared.
PairedSample pair_and_log(const GrowthSeries& target, const GrowthSeries& reference);

// Full level-series-to-rate-series chain: optional rebase, then rate and
// moving average in the configured order.
GrowthSeries preprocess(const GrowthSeries& levels, const PreprocessConfig& config);

}  // namespace allometry
