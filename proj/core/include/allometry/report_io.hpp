#pragma once

// Report serialization: fixed-width text table, JSON (lossless round trip,
// documented key names), and scenario-file loading for the simulator.

#include <filesystem>
#include <string>

#include "allometry/analysis.hpp"
#include "allometry/synthetic.hpp"

namespace allometry {

// Fixed-width table with columns Entity | B (SE) | Typology | R2 adj.
// Significance marks on the B = 0 test: ** at 1%, * at 5%, # otherwise.
std::string emit_text(const Report& report);

std::string report_to_json_string(const Report& report);

// Writes report_to_json_string to path. Throws on unwritable paths.
void emit_json(const Report& report, const std::filesystem::path& path);

// Inverse of report_to_json_string over the documented schema (plot-only
// fields such as the raw pairs are not part of it).
Report parse_report_json(const std::string& text);

ScenarioSpec load_scenario(const std::filesystem::path& path);

}  // namespace allometry
