#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include "allometry/analysis.hpp"
#include "allometry/csv.hpp"
#include "allometry/report_io.hpp"
#include "allometry/svg_plot.hpp"
#include "allometry/synthetic.hpp"
#include "allometry/version.hpp"

using namespace allometry;

namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "allometry_test_report";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const char* name, const std::string& body) {
  const fs::path path = temp_dir() / name;
  std::ofstream out(path);
  out << body;
  return path;
}

Panel synthetic_panel(double noise = 0.005, std::uint64_t seed = 42) {
  ScenarioSpec spec;
  spec.curve_y = {100.0, 0.15, 12.0};
  spec.curve_x = {100.0, 0.30, 12.0};
  spec.year_start = 0;
  spec.year_end = 39;
  spec.noise_sd = noise;
  spec.seed = seed;
  spec.target_name = "Wagon";
  spec.reference_name = "Locomotive";
  auto [target, reference] = generate(spec);
  return {target, reference};
}

// Pulls `attr="number"` values for every element matching the tag+class.
std::vector<std::vector<double>> extract_svg(const std::string& svg, const std::string& pattern) {
  std::vector<std::vector<double>> rows;
  const std::regex element(pattern);
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), element);
       it != std::sregex_iterator(); ++it) {
    std::vector<double> row;
    for (std::size_t g = 1; g < it->size(); ++g) row.push_back(std::stod((*it)[g]));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("csv ingest") {
  SUBCASE("table fixture: 25 entities, 3 years each") {
    const fs::path fixture = fs::path(__FILE__).parent_path() / "fixtures" / "table_1a.csv";
    const Panel panel = ingest_csv(fixture);
    CHECK(panel.size() == 25);
    for (const auto& series : panel) {
      CHECK(series.observations.size() == 3);
      CHECK(series.units == SeriesUnits::levels);
    }
    const GrowthSeries* molise = find_entity(panel, "Molise");
    REQUIRE(molise != nullptr);
    CHECK(molise->observations[0].year == 1981);
    CHECK(molise->observations[0].value == 9895.0);
  }
  SUBCASE("rows may arrive unsorted") {
    const auto path = write_file("unsorted.csv",
                                 "entity,year,value\nA,1982,2\nB,1981,5\nA,1980,1\nA,1981,3\n");
    const Panel panel = ingest_csv(path);
    REQUIRE(panel.size() == 2);
    CHECK(panel[0].entity == "A");
    REQUIRE(panel[0].observations.size() == 3);
    CHECK(panel[0].observations[0].year == 1980);
    CHECK(panel[0].observations[2].year == 1982);
  }
  SUBCASE("empty file") {
    const auto path = write_file("empty.csv", "");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("empty input"), std::runtime_error);
  }
  SUBCASE("header only") {
    const auto path = write_file("header_only.csv", "entity,year,value\n");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("empty input"), std::runtime_error);
  }
  SUBCASE("bad header") {
    const auto path = write_file("bad_header.csv", "region,year,value\nA,1980,1\n");
    CHECK_THROWS_AS(ingest_csv(path), std::runtime_error);
  }
  SUBCASE("duplicate key names the line") {
    const auto path = write_file(
        "dup.csv", "entity,year,value\nMolise,1981,9895\nMolise,1981,9895\n");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("line 3"), std::runtime_error);
  }
  SUBCASE("unparseable row names the line") {
    const auto path = write_file("bad_row.csv", "entity,year,value\nA,198x,1\n");
    CHECK_THROWS_WITH_AS(ingest_csv(path), doctest::Contains("line 2"), std::runtime_error);
    const auto path2 = write_file("bad_val.csv", "entity,year,value\nA,1980,1.2.3\n");
    CHECK_THROWS_AS(ingest_csv(path2), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(ingest_csv(temp_dir() / "missing.csv"), std::runtime_error);
  }
  SUBCASE("panel csv round trip") {
    const Panel panel = synthetic_panel();
    const fs::path path = temp_dir() / "roundtrip.csv";
    write_panel_csv(panel, path);
    const Panel back = ingest_csv(path);
    REQUIRE(back.size() == panel.size());
    const GrowthSeries* wagon = find_entity(back, "Wagon");
    REQUIRE(wagon != nullptr);
    for (std::size_t i = 0; i < wagon->observations.size(); ++i)
      CHECK(wagon->observations[i].value == find_entity(panel, "Wagon")->observations[i].value);
  }
}

TEST_CASE("analyze") {
  SUBCASE("synthetic panel recovers the known ratio") {
    AnalysisConfig config;
    config.reference = "Locomotive";
    const Report report = analyze(synthetic_panel(), config);
    REQUIRE(report.records.size() == 1);
    const EntityRecord& wagon = report.records[0];
    CHECK_FALSE(wagon.skipped);
    CHECK(wagon.b_hat == doctest::Approx(0.5).epsilon(0.15));
    REQUIRE(wagon.verdict.has_value());
    CHECK(wagon.fitted_relation.find("Locomotive x_t^") != std::string::npos);
    CHECK(report.version == std::string(kVersion));
  }
  SUBCASE("copied reference is exact isometry") {
    Panel panel = synthetic_panel(0.0);
    panel[1] = panel[0];
    panel[1].entity = "Copy";
    AnalysisConfig config;
    config.reference = "Wagon";
    const Report report = analyze(panel, config);
    REQUIRE(report.records.size() == 1);
    CHECK(report.records[0].b_hat == 1.0);
    CHECK(report.records[0].verdict->label == GrowthLabel::Isometry);
  }
  SUBCASE("three-year snapshots are skipped with the documented reason") {
    const fs::path fixture = fs::path(__FILE__).parent_path() / "fixtures" / "table_1a.csv";
    AnalysisConfig config;
    config.reference = "Italy North West";
    const Report report = analyze(ingest_csv(fixture), config);
    CHECK(report.records.size() == 24);
    for (const auto& record : report.records) {
      CHECK(record.skipped);
      CHECK(record.skip_reason == kSkipInsufficientObs);
    }
  }
  SUBCASE("missing reference") {
    AnalysisConfig config;
    config.reference = "Nowhere";
    CHECK_THROWS_AS(analyze(synthetic_panel(), config), std::invalid_argument);
  }
  SUBCASE("every non-reference entity appears exactly once") {
    Panel panel = synthetic_panel();
    GrowthSeries extra = panel[0];
    extra.entity = "Short";
    extra.observations.resize(3);
    panel.push_back(extra);
    AnalysisConfig config;
    config.reference = "Locomotive";
    const Report report = analyze(panel, config);
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].entity == "Short");  // panel sorted upstream; records by name
    CHECK(report.records[0].skipped);
    CHECK(report.records[1].entity == "Wagon");
    CHECK_FALSE(report.records[1].skipped);
  }
}

TEST_CASE("emit_text") {
  SUBCASE("analyzed rows carry stars, typology, r2") {
    AnalysisConfig config;
    config.reference = "Locomotive";
    const Report report = analyze(synthetic_panel(), config);
    const std::string text = emit_text(report);
    CHECK(text.find("Entity") != std::string::npos);
    CHECK(text.find("Wagon") != std::string::npos);
    CHECK(text.find("NegativeAllometry") != std::string::npos);
    // slope ~0.49 with a tiny se: significant at 1% -> two stars
    CHECK(text.find("** (") != std::string::npos);
  }
  SUBCASE("published-style row renders B, stars, SE and R2 adj") {
    Report report;
    report.version = std::string(kVersion);
    report.reference = "NItaly";
    EntityRecord record;
    record.entity = "Molise";
    record.n = 23;
    record.b_hat = 0.793;
    record.se_b = 0.069;
    record.r2_adj = 0.855;
    record.intercept = 0.353;
    record.verdict = classify_from_summary(0.793, 0.069, 23, 0.05);
    record.fitted_relation = "Molise y_t = 1.423 · NItaly x_t^0.793";
    report.records.push_back(record);
    const std::string text = emit_text(report);
    // B=0 p ~ 1.6e-10: the stated star rule gives the 1% mark here even
    // though the printed table showed a single star.
    CHECK(text.find("0.793** (0.069)") != std::string::npos);
    CHECK(text.find("NegativeAllometry") != std::string::npos);
    CHECK(text.find("0.855") != std::string::npos);
  }
  SUBCASE("empty report is just the header") {
    Report report;
    report.version = std::string(kVersion);
    report.reference = "X";
    const std::string text = emit_text(report);
    CHECK(text.find("Entity") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);  // config echo + header + rule
  }
  SUBCASE("skipped entities show a dash and the reason") {
    const fs::path fixture = fs::path(__FILE__).parent_path() / "fixtures" / "table_1a.csv";
    AnalysisConfig config;
    config.reference = "Italy North West";
    const std::string text = emit_text(analyze(ingest_csv(fixture), config));
    CHECK(text.find("—") != std::string::npos);
    CHECK(text.find(kSkipInsufficientObs) != std::string::npos);
  }
  SUBCASE("stars agree with the B=0 rejection map") {
    // Rows engineered to land in each star bucket.
    const std::vector<std::tuple<double, double, int>> rows = {
        {0.63, 0.056, 23},  // ** (p << 0.01)
        {0.582, 0.230, 21},  // * (0.01 < p <= 0.05)
        {0.294, 0.224, 20},  // # (p > 0.05)
    };
    Report report;
    report.version = std::string(kVersion);
    report.reference = "R";
    int idx = 0;
    for (const auto& [b, se, n] : rows) {
      EntityRecord record;
      record.entity = "row" + std::to_string(idx++);
      record.n = n;
      record.b_hat = b;
      record.se_b = se;
      record.verdict = classify_from_summary(b, se, n, 0.05);
      report.records.push_back(record);
    }
    const std::string text = emit_text(report);
    std::istringstream lines(text);
    std::string line;
    std::size_t row_index = 0;
    while (std::getline(lines, line)) {
      if (line.rfind("row", 0) != 0) continue;
      REQUIRE(row_index < report.records.size());
      const auto& verdict = *report.records[row_index].verdict;
      const bool has_two = line.find("**") != std::string::npos;
      const bool has_one = !has_two && line.find('*') != std::string::npos;
      const bool has_hash = line.find('#') != std::string::npos;
      CHECK(has_two == verdict.test_vs_zero.reject_at.at(0.01));
      CHECK(has_one == (verdict.test_vs_zero.reject_at.at(0.05) &&
                        !verdict.test_vs_zero.reject_at.at(0.01)));
      CHECK(has_hash == !verdict.test_vs_zero.reject_at.at(0.05));
      ++row_index;
    }
    CHECK(row_index == 3);
  }
}

TEST_CASE("emit_json round trip") {
  AnalysisConfig config;
  config.reference = "Locomotive";
  Report report = analyze(synthetic_panel(), config);

  SUBCASE("serialize-parse-serialize is byte-stable and lossless") {
    const std::string first = report_to_json_string(report);
    const Report parsed = parse_report_json(first);
    const std::string second = report_to_json_string(parsed);
    CHECK(first == second);
    REQUIRE(parsed.records.size() == report.records.size());
    CHECK(parsed.records[0].b_hat == report.records[0].b_hat);  // bit-exact
    CHECK(parsed.records[0].se_b == report.records[0].se_b);
    CHECK(parsed.records[0].dw == report.records[0].dw);
    CHECK(parsed.records[0].verdict->label == report.records[0].verdict->label);
    CHECK(parsed.records[0].verdict->test_vs_one.p_two_sided ==
          report.records[0].verdict->test_vs_one.p_two_sided);
    CHECK(parsed.version == report.version);
    CHECK(parsed.alpha == report.alpha);
  }
  SUBCASE("infinity sentinels travel as strings") {
    Panel panel = synthetic_panel(0.0);
    panel[1] = panel[0];
    panel[1].entity = "Copy";
    AnalysisConfig cfg;
    cfg.reference = "Wagon";
    const Report perfect = analyze(panel, cfg);
    REQUIRE(std::isinf(perfect.records[0].f_stat));
    const std::string text = report_to_json_string(perfect);
    CHECK(text.find("\"inf\"") != std::string::npos);
    const Report parsed = parse_report_json(text);
    CHECK(std::isinf(parsed.records[0].f_stat));
    CHECK(parsed.records[0].f_stat > 0.0);
  }
  SUBCASE("version field present") {
    const std::string text = report_to_json_string(report);
    CHECK(text.find("\"version\": \"" + std::string(kVersion) + "\"") != std::string::npos);
  }
  SUBCASE("file emission") {
    const fs::path path = temp_dir() / "report.json";
    emit_json(report, path);
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body == report_to_json_string(report));
    CHECK_THROWS_AS(emit_json(report, temp_dir() / "no_such_dir" / "report.json"),
                    std::runtime_error);
  }
  SUBCASE("whole-pipeline determinism") {
    AnalysisConfig cfg;
    cfg.reference = "Locomotive";
    const Report a = analyze(synthetic_panel(), cfg);
    const Report b = analyze(synthetic_panel(), cfg);
    CHECK(report_to_json_string(a) == report_to_json_string(b));
    CHECK(emit_text(a) == emit_text(b));
    CHECK(emit_text(parse_report_json(report_to_json_string(a))) == emit_text(a));
  }
}

TEST_CASE("emit_svg") {
  const std::string circle_pat = "<circle cx=\"([-0-9.]+)\" cy=\"([-0-9.]+)\"";
  const std::string fit_pat =
      "<line class=\"fit\" x1=\"([-0-9.]+)\" y1=\"([-0-9.]+)\" x2=\"([-0-9.]+)\" y2=\"([-0-9.]+)\"";
  const std::string ref_pat =
      "<line class=\"ref\" x1=\"([-0-9.]+)\" y1=\"([-0-9.]+)\" x2=\"([-0-9.]+)\" y2=\"([-0-9.]+)\"";

  auto record_from_pairs = [](std::vector<PairedSample::LogPair> pairs) {
    PairedSample sample;
    sample.target_entity = "T";
    sample.reference_entity = "R";
    sample.pairs = std::move(pairs);
    std::vector<double> x, y;
    for (const auto& p : sample.pairs) {
      x.push_back(p.ln_x);
      y.push_back(p.ln_y);
    }
    const OlsFit fit = ols_fit(x, y);
    EntityRecord record;
    record.entity = "T";
    record.n = fit.n;
    record.intercept = fit.intercept;
    record.b_hat = fit.slope;
    record.verdict = classify(fit, 0.05);
    record.fitted_relation = render_relation(fit, "T", "R");
    record.pairs = sample;
    return record;
  };

  SUBCASE("perfect-fit line passes through the plotted points") {
    // 3 collinear points (the regression needs 3)
    const EntityRecord record =
        record_from_pairs({{1, -2.0, -3.0}, {2, -1.5, -2.0}, {3, -1.0, -1.0}});
    const std::string svg = render_svg(record, record.pairs);
    const auto circles = extract_svg(svg, circle_pat);
    const auto fit_lines = extract_svg(svg, fit_pat);
    REQUIRE(circles.size() == 3);
    REQUIRE(fit_lines.size() == 1);
    const auto& line = fit_lines[0];
    const double dx = line[2] - line[0], dy = line[3] - line[1];
    for (const auto& c : circles) {
      // distance from point to the drawn segment's carrying line
      const double dist =
          std::abs(dy * (c[0] - line[0]) - dx * (c[1] - line[1])) / std::hypot(dx, dy);
      CHECK(dist <= 0.5);
    }
  }
  SUBCASE("slope-one data puts fitted and reference lines together") {
    const EntityRecord record =
        record_from_pairs({{1, -3.0, -3.0}, {2, -2.2, -2.2}, {3, -1.1, -1.1}, {4, -0.4, -0.4}});
    const std::string svg = render_svg(record, record.pairs);
    const auto fit_lines = extract_svg(svg, fit_pat);
    const auto ref_lines = extract_svg(svg, ref_pat);
    REQUIRE(fit_lines.size() == 1);
    REQUIRE(ref_lines.size() == 1);
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(fit_lines[0][i] - ref_lines[0][i]) <= 0.5);
  }
  SUBCASE("caption carries the fitted relation text") {
    AnalysisConfig config;
    config.reference = "Locomotive";
    const Report report = analyze(synthetic_panel(), config);
    const EntityRecord& wagon = report.records[0];
    const std::string svg = render_svg(wagon, wagon.pairs);
    char expected[32];
    std::snprintf(expected, sizeof(expected), "x_t^%.3f", wagon.b_hat);
    CHECK(svg.find(expected) != std::string::npos);
  }
  SUBCASE("output parses as balanced XML") {
    const EntityRecord record =
        record_from_pairs({{1, -2.0, -3.0}, {2, -1.5, -2.0}, {3, -1.0, -1.0}});
    const std::string svg = render_svg(record, record.pairs);
    CHECK(svg.rfind("<svg ", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    // every opened element is either self-closed or closed
    const std::regex tag("<(/?)([a-zA-Z]+)[^>]*?(/?)>");
    std::vector<std::string> stack;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag);
         it != std::sregex_iterator(); ++it) {
      const bool closing = (*it)[1].length() > 0;
      const bool self_closed = (*it)[3].length() > 0;
      if (closing) {
        REQUIRE_FALSE(stack.empty());
        CHECK(stack.back() == (*it)[2]);
        stack.pop_back();
      } else if (!self_closed) {
        stack.push_back((*it)[2]);
      }
    }
    CHECK(stack.empty());
  }
  SUBCASE("skipped records are rejected") {
    EntityRecord record;
    record.entity = "S";
    record.skipped = true;
    CHECK_THROWS_AS(render_svg(record, record.pairs), std::invalid_argument);
  }
  SUBCASE("file emission") {
    const EntityRecord record =
        record_from_pairs({{1, -2.0, -3.0}, {2, -1.5, -2.0}, {3, -1.0, -1.0}});
    const fs::path path = temp_dir() / "plot.svg";
    emit_svg(record, record.pairs, path);
    CHECK(fs::file_size(path) > 0);
  }
}

TEST_CASE("scenario files") {
  const auto path = write_file("scenario.json", R"({
    "family": "logistic",
    "curve_y": {"capacity": 100.0, "rate": 0.15, "inflection_time": 12.0},
    "curve_x": {"capacity": 100.0, "rate": 0.30, "inflection_time": 12.0},
    "years": {"start": 0, "end": 39},
    "noise_sd": 0.005,
    "seed": 42,
    "target_name": "Wagon",
    "reference_name": "Locomotive"
  })");
  const ScenarioSpec spec = load_scenario(path);
  CHECK(spec.family == CurveFamily::logistic);
  CHECK(spec.curve_y.rate == 0.15);
  CHECK(spec.curve_x.locus == 12.0);
  CHECK(spec.year_end == 39);
  CHECK(spec.noise_sd == 0.005);
  CHECK(spec.seed == 42);
  CHECK(spec.target_name == "Wagon");

  SUBCASE("gompertz curves read the shape key") {
    const auto gpath = write_file("scenario_g.json", R"({
      "family": "gompertz",
      "curve_y": {"capacity": 100.0, "rate": 0.4, "shape": 4.0},
      "curve_x": {"capacity": 100.0, "rate": 0.4, "shape": 4.0},
      "years": {"start": 0, "end": 20}
    })");
    const ScenarioSpec gspec = load_scenario(gpath);
    CHECK(gspec.family == CurveFamily::gompertz);
    CHECK(gspec.curve_y.locus == 4.0);
    CHECK(gspec.seed == 0);
  }
  SUBCASE("bad family") {
    const auto bad = write_file("scenario_bad.json", R"({"family": "cubic"})");
    CHECK_THROWS_AS(load_scenario(bad), std::exception);
  }
}
