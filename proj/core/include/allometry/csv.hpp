#pragma once

// Long-format panel CSV: header `entity,year,value`, one observation per row.

#include <filesystem>
#include <string_view>
#include <vector>

#include "allometry/timeseries.hpp"

namespace allometry {

using Panel = std::vector<GrowthSeries>;  // sorted by entity name

// Parses the panel file; rows may arrive in any order. Errors (malformed
// header, unparseable row, duplicate (entity, year), empty input) throw
// std::runtime_error naming the offending line.
Panel ingest_csv(const std::filesystem::path& path);

void write_panel_csv(const Panel& panel, const std::filesystem::path& path);

const GrowthSeries* find_entity(const Panel& panel, std::string_view entity);

}  // namespace allometry
