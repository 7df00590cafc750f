#include "allometry/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#include "allometry/version.hpp"

namespace allometry {

namespace {

// Length accounting up front: a level series of length L yields L-1 rates and
// L-1-(w-1) smoothed observations; anything below the window (or below 3
// final pairs) cannot be regressed.
bool long_enough(const GrowthSeries& levels, const PreprocessConfig& config) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(levels.observations.size());
  return n - 1 - (config.ma_window - 1) >= 1;
}

}  // namespace

Report analyze(const Panel& panel, const AnalysisConfig& config) {
  const GrowthSeries* reference = find_entity(panel, config.reference);
  if (!reference)
    throw std::invalid_argument("reference entity `" + config.reference +
                                "` not present in panel");
  if (!(config.alpha > 0.0 && config.alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");

  Report report;
  report.version = std::string(kVersion);
  report.reference = config.reference;
  report.alpha = config.alpha;
  report.preprocess = config.preprocess;

  // Preprocess the reference once; a too-short reference makes every record
  // fail the same way as a too-short target.
  GrowthSeries reference_rates;
  std::string reference_failure;
  if (!long_enough(*reference, config.preprocess)) {
    reference_failure = kSkipInsufficientObs;
  } else {
    try {
      reference_rates = preprocess(*reference, config.preprocess);
    } catch (const std::exception& e) {
      reference_failure = std::string("reference preprocessing failed: ") + e.what();
    }
  }

  for (const GrowthSeries& target : panel) {
    if (target.entity == config.reference) continue;
    EntityRecord record;
    record.entity = target.entity;

    auto skip = [&](const std::string& reason) {
      record.skipped = true;
      record.skip_reason = reason;
    };

    if (!reference_failure.empty()) {
      skip(reference_failure);
      report.records.push_back(std::move(record));
      continue;
    }
    if (!long_enough(target, config.preprocess)) {
      skip(kSkipInsufficientObs);
      report.records.push_back(std::move(record));
      continue;
    }

    try {
      const GrowthSeries target_rates = preprocess(target, config.preprocess);
      record.pairs = pair_and_log(target_rates, reference_rates);
      record.dropped = record.pairs.dropped;
      if (record.pairs.pairs.size() < 3) {
        skip(kSkipInsufficientObs);
      } else {
        OlsFit fit;
        try {
          fit = ols_fit(record.pairs);
        } catch (const std::invalid_argument&) {
          skip("degenerate regressor after preprocessing");
          report.records.push_back(std::move(record));
          continue;
        }
        record.n = fit.n;
        record.intercept = fit.intercept;
        record.se_intercept = fit.se_intercept;
        record.b_hat = fit.slope;
        record.se_b = fit.se_slope;
        record.s = fit.s;
        record.r2 = fit.r2;
        record.r2_adj = fit.r2_adj;
        record.f_stat = fit.f_stat;
        record.f_p = fit.f_p;
        record.dw = fit.dw;
        record.verdict = classify(fit, config.alpha);
        record.fitted_relation = render_relation(fit, target.entity, config.reference);
      }
    } catch (const std::domain_error& e) {
      skip(std::string("preprocessing failed: ") + e.what());
    } catch (const std::invalid_argument&) {
      // Empty overlap or a series that fell below the minimum along the way.
      skip(kSkipInsufficientObs);
    }
    report.records.push_back(std::move(record));
  }
  // Deterministic merge regardless of panel order.
  std::sort(report.records.begin(), report.records.end(),
            [](const EntityRecord& a, const EntityRecord& b) { return a.entity < b.entity; });
  return report;
}

}  // namespace allometry
