#pragma once

// Synthetic S-curve pairs with known ground-truth rates, for exercising the
// whole rate -> smooth -> log -> regress pipeline against scenarios where the
// right answer is known.

#include <cstdint>
#include <string>
#include <utility>

#include "allometry/growth_curves.hpp"
#include "allometry/timeseries.hpp"
#include "allometry/typology.hpp"

namespace allometry {

enum class CurveFamily { logistic, gompertz };

// Curve parameters, read per family: locus is the inflection time for
// logistic curves and the shape constant I for Gompertz curves.
struct CurveSpec {
  double capacity = 100.0;
  double rate = 0.3;
  double locus = 0.0;
};

struct ScenarioSpec {
  CurveFamily family = CurveFamily::logistic;
  CurveSpec curve_y;  // target
  CurveSpec curve_x;  // reference
  int year_start = 0;
  int year_end = 39;           // inclusive; span must cover >= 4 points
  double noise_sd = 0.0;       // multiplicative log-normal noise scale
  std::uint64_t seed = 0;
  std::string target_name = "target";
  std::string reference_name = "reference";
};

// Levels sampled from the exact curve at integer years, multiplied by
// exp(eps) with eps ~ Normal(0, noise_sd^2). Noise is drawn by Box-Muller
// over std::mt19937_64 seeded with spec.seed, target series first, so equal
// specs give byte-identical output. Returns (target, reference).
std::pair<GrowthSeries, GrowthSeries> generate(const ScenarioSpec& spec);

struct RecoveryResult {
  double true_ratio = 1.0;  // target rate / reference rate
  double b_hat = 0.0;
  OlsFit fit;
  TypologyVerdict verdict;
  PairedSample pairs;
};

// generate -> preprocess -> pair_and_log -> ols_fit -> classify, returning
// the ground-truth rate ratio next to the estimate.
RecoveryResult recovery_check(const ScenarioSpec& spec,
                              const PreprocessConfig& config, double alpha);

}  // namespace allometry
