#include "allometry/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace allometry {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(path.string() + ": line " + std::to_string(line) + ": " + what);
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

Panel ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty input");
  ++line_no;
  if (strip_cr(line) != "entity,year,value")
    fail(path, line_no, "expected header `entity,year,value`, got `" + line + "`");

  std::map<std::string, std::map<int, double>> by_entity;
  std::set<std::pair<std::string, int>> seen;
  bool any_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      fail(path, line_no, "expected 3 comma-separated fields");
    const std::string entity = line.substr(0, c1);
    const std::string year_text = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string value_text = line.substr(c2 + 1);
    if (entity.empty()) fail(path, line_no, "empty entity name");

    int year = 0;
    auto [yp, yec] = std::from_chars(year_text.data(), year_text.data() + year_text.size(), year);
    if (yec != std::errc() || yp != year_text.data() + year_text.size())
      fail(path, line_no, "cannot parse year `" + year_text + "`");

    double value = 0.0;
    auto [vp, vec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (vec != std::errc() || vp != value_text.data() + value_text.size())
      fail(path, line_no, "cannot parse value `" + value_text + "`");

    if (!seen.insert({entity, year}).second)
      fail(path, line_no, "duplicate observation for (" + entity + ", " + year_text + ")");
    by_entity[entity][year] = value;
    any_row = true;
  }
  if (!any_row) throw std::runtime_error(path.string() + ": empty input");

  Panel panel;
  panel.reserve(by_entity.size());
  for (const auto& [entity, rows] : by_entity) {
    GrowthSeries series;
    series.entity = entity;
    series.units = SeriesUnits::levels;
    series.observations.reserve(rows.size());
    for (const auto& [year, value] : rows) series.observations.push_back({year, value});
    panel.push_back(std::move(series));
  }
  return panel;
}

void write_panel_csv(const Panel& panel, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "entity,year,value\n";
  char buffer[64];
  for (const auto& series : panel)
    for (const auto& obs : series.observations) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", obs.value);
      out << series.entity << ',' << obs.year << ',' << buffer << '\n';
    }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

const GrowthSeries* find_entity(const Panel& panel, std::string_view entity) {
  const auto it = std::find_if(panel.begin(), panel.end(), [entity](const GrowthSeries& s) {
    return s.entity == entity;
  });
  return it == panel.end() ? nullptr : &*it;
}

}  // namespace allometry
