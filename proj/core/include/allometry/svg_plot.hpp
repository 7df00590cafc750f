#pragma once

#include <filesystem>
#include <string>

#include "allometry/analysis.hpp"

namespace allometry {

// Self-contained SVG: scatter of (ln x, ln y), the fitted line, a dashed
// slope-1 reference line through the data centroid, axis labels, and the
// fitted-relation caption. Throws std::invalid_argument for skipped records.
std::string render_svg(const EntityRecord& record, const PairedSample& pairs);

void emit_svg(const EntityRecord& record, const PairedSample& pairs,
              const std::filesystem::path& path);

}  // namespace allometry
