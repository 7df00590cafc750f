// Command-line front end: panel analysis against a reference entity,
// synthetic-scenario simulation, summary-statistic classification, and
// S-curve fitting.
//
// Exit codes: 0 success, 1 input error, 2 analysis degeneracy (every entity
// skipped).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "allometry/analysis.hpp"
#include "allometry/csv.hpp"
#include "allometry/growth_curves.hpp"
#include "allometry/report_io.hpp"
#include "allometry/svg_plot.hpp"
#include "allometry/synthetic.hpp"
#include "allometry/version.hpp"

namespace {

using namespace allometry;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitDegenerate = 2;

struct PreprocessFlags {
  double alpha = 0.05;
  int ma_window = 3;
  std::string rate = "pct";
  std::string smooth_order = "rate-first";
  std::optional<int> rebase_year;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "significance level in (0,1)")
        ->check(CLI::Range(1e-9, 1.0 - 1e-9));
    cmd->add_option("--ma-window", ma_window, "odd moving-average window")->check(CLI::PositiveNumber);
    cmd->add_option("--rate", rate, "rate method")->check(CLI::IsMember({"pct", "logdiff"}));
    cmd->add_option("--smooth-order", smooth_order, "apply smoothing before or after rates")
        ->check(CLI::IsMember({"rate-first", "level-first"}));
    cmd->add_option("--rebase-year", rebase_year, "divide levels by this year's value first");
  }

  PreprocessConfig to_config() const {
    PreprocessConfig config;
    config.rate_method = rate == "pct" ? RateMethod::percent_change : RateMethod::log_difference;
    config.ma_window = ma_window;
    config.smooth_order =
        smooth_order == "rate-first" ? SmoothOrder::rate_first : SmoothOrder::level_first;
    config.rebase_year = rebase_year;
    return config;
  }
};

std::set<std::string> parse_formats(const std::string& csv) {
  std::set<std::string> formats;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string piece = csv.substr(start, comma - start);
    if (piece != "text" && piece != "json" && piece != "svg")
      throw CLI::ValidationError("--format", "unknown format `" + piece + "`");
    formats.insert(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return formats;
}

int run_analyze(const std::string& csv_path, const std::string& reference,
                const PreprocessFlags& flags, const std::string& formats_csv,
                const std::string& out_dir) {
  AnalysisConfig config;
  config.reference = reference;
  config.alpha = flags.alpha;
  config.preprocess = flags.to_config();
  config.output_formats = parse_formats(formats_csv);
  config.output_dir = out_dir;

  const Panel panel = ingest_csv(csv_path);
  const Report report = analyze(panel, config);

  if (config.output_formats.count("text")) std::cout << emit_text(report);
  if (config.output_formats.count("json")) {
    std::filesystem::create_directories(config.output_dir);
    emit_json(report, config.output_dir / "report.json");
  }
  if (config.output_formats.count("svg")) {
    std::filesystem::create_directories(config.output_dir);
    for (const auto& record : report.records)
      if (!record.skipped)
        emit_svg(record, record.pairs, config.output_dir / (record.entity + ".svg"));
  }

  const bool all_skipped = std::all_of(report.records.begin(), report.records.end(),
                                       [](const EntityRecord& r) { return r.skipped; });
  return all_skipped ? kExitDegenerate : kExitOk;
}

int run_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                 const PreprocessFlags& flags, const std::string& out_dir) {
  ScenarioSpec spec = load_scenario(scenario_path);
  if (seed) spec.seed = *seed;

  if (!out_dir.empty()) {
    auto [target, reference] = generate(spec);
    std::filesystem::create_directories(out_dir);
    write_panel_csv({target, reference}, std::filesystem::path(out_dir) / "panel.csv");
  }

  const RecoveryResult result = recovery_check(spec, flags.to_config(), flags.alpha);
  std::printf("true_ratio %.17g\n", result.true_ratio);
  std::printf("b_hat      %.17g\n", result.b_hat);
  std::printf("se_b       %.17g\n", result.fit.se_slope);
  std::printf("n          %d\n", result.fit.n);
  std::printf("verdict    %s\n", to_string(result.verdict.label).c_str());
  return kExitOk;
}

int run_classify(double b, double se, int n, double alpha) {
  const TypologyVerdict verdict = classify_from_summary(b, se, n, alpha);
  std::printf("verdict  %s\n", to_string(verdict.label).c_str());
  std::printf("p(B=0)   %.6g\n", verdict.test_vs_zero.p_two_sided);
  std::printf("p(B=1)   %.6g (two-sided)\n", verdict.test_vs_one.p_two_sided);
  std::printf("%s\n", verdict.rationale.c_str());
  return kExitOk;
}

int run_fit_curve(const std::string& csv_path, const std::string& family) {
  const Panel panel = ingest_csv(csv_path);
  for (const auto& series : panel) {
    try {
      if (family == "logistic") {
        const LogisticCurve curve = fit_logistic(series);
        std::printf("%s: capacity=%.10g rate=%.10g inflection_time=%.10g\n",
                    series.entity.c_str(), curve.capacity, curve.rate, curve.inflection_time);
      } else {
        const GompertzCurve curve = fit_gompertz(series);
        std::printf("%s: capacity=%.10g rate=%.10g shape=%.10g\n", series.entity.c_str(),
                    curve.capacity, curve.rate, curve.shape);
      }
    } catch (const std::exception& e) {
      std::printf("%s: fit failed (%s)\n", series.entity.c_str(), e.what());
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative-growth analysis: S-curve fits, allometric exponents, growth typology"};
  app.set_version_flag("--version", std::string(allometry::kVersion));
  app.require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a panel CSV against a reference entity");
  std::string analyze_csv, reference, formats = "text", out_dir = ".";
  PreprocessFlags analyze_flags;
  analyze_cmd->add_option("csv", analyze_csv, "panel CSV (entity,year,value)")->required();
  analyze_cmd->add_option("--reference", reference, "reference entity name")->required();
  analyze_cmd->add_option("--format", formats, "comma list from {text,json,svg}");
  analyze_cmd->add_option("--out", out_dir, "output directory for json/svg");
  analyze_flags.attach(analyze_cmd);

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "run a synthetic scenario through the pipeline");
  std::string scenario_path, sim_out;
  std::optional<std::uint64_t> sim_seed;
  PreprocessFlags simulate_flags;
  simulate_cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
  simulate_cmd->add_option("--seed", sim_seed, "override the scenario seed");
  simulate_cmd->add_option("--out", sim_out, "write the generated panel.csv here");
  simulate_flags.attach(simulate_cmd);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "classify published summary statistics");
  double cls_b = 0.0, cls_se = 0.0, cls_alpha = 0.05;
  int cls_n = 0;
  classify_cmd->add_option("--b", cls_b, "slope estimate")->required();
  classify_cmd->add_option("--se", cls_se, "its standard error")->required();
  classify_cmd->add_option("--n", cls_n, "sample size")->required();
  classify_cmd->add_option("--alpha", cls_alpha, "significance level");

  // fit-curve
  auto* fit_cmd = app.add_subcommand("fit-curve", "fit a growth curve to every entity");
  std::string fit_csv, fit_family = "logistic";
  fit_cmd->add_option("csv", fit_csv, "panel CSV (entity,year,value)")->required();
  fit_cmd->add_option("--family", fit_family, "curve family")
      ->check(CLI::IsMember({"logistic", "gompertz"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*analyze_cmd)
      return run_analyze(analyze_csv, reference, analyze_flags, formats, out_dir);
    if (*simulate_cmd) return run_simulate(scenario_path, sim_seed, simulate_flags, sim_out);
    if (*classify_cmd) return run_classify(cls_b, cls_se, cls_n, cls_alpha);
    if (*fit_cmd) return run_fit_curve(fit_csv, fit_family);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
