#pragma once

// Runs the full pipeline for every entity of a panel against a chosen
// reference entity and assembles the per-entity report.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "allometry/csv.hpp"
#include "allometry/inference.hpp"
#include "allometry/timeseries.hpp"
#include "allometry/typology.hpp"

namespace allometry {

struct AnalysisConfig {
  std::string reference;
  double alpha = 0.05;
  PreprocessConfig preprocess;
  std::set<std::string> output_formats = {"text"};  // subset of {text, json, svg}
  std::filesystem::path output_dir = ".";
};

inline constexpr const char* kSkipInsufficientObs =
    "insufficient observations after preprocessing";

struct EntityRecord {
  std::string entity;
  bool skipped = false;
  std::string skip_reason;

  // Statistics, populated when !skipped. Mirrors the report table layout:
  // constant (se), slope (se), adjusted R^2, regression standard error,
  // F (significance), Durbin-Watson, sample size.
  int n = 0;
  double intercept = 0.0;
  double se_intercept = 0.0;
  double b_hat = 0.0;
  double se_b = 0.0;
  double s = 0.0;
  double r2 = 0.0;
  double r2_adj = 0.0;
  double f_stat = 0.0;
  double f_p = 0.0;
  double dw = 0.0;
  std::optional<TypologyVerdict> verdict;
  std::string fitted_relation;
  std::vector<DroppedObservation> dropped;

  // Kept for plotting; not part of the serialized report schema.
  PairedSample pairs;
};

struct Report {
  std::string version;
  std::string reference;
  double alpha = 0.05;
  PreprocessConfig preprocess;
  std::vector<EntityRecord> records;  // one per non-reference entity, by name
};

// Throws std::invalid_argument when the reference entity is missing.
// Entities that cannot be analyzed appear as skipped records with a reason.
Report analyze(const Panel& panel, const AnalysisConfig& config);

}  // namespace allometry
