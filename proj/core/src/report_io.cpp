#include "allometry/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace allometry {

namespace {

using nlohmann::json;

std::string fmt(const char* spec, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), spec, value);
  return buffer;
}

// Significance mark from the B=0 test: ** at 1%, * at 5%, # otherwise.
std::string significance_mark(const TypologyVerdict& verdict) {
  const double p = verdict.test_vs_zero.p_two_sided;
  if (p <= 0.01) return "**";
  if (p <= 0.05) return "*";
  return "#";
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

// Non-finite doubles travel as strings ("inf", "-inf", "nan"); JSON itself
// has no representation for them.
json encode_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double decode_double(const json& value) {
  if (value.is_string()) {
    const std::string& text = value.get_ref<const std::string&>();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::runtime_error("unexpected numeric sentinel: " + text);
  }
  return value.get<double>();
}

json test_to_json(const HypothesisTest& test) {
  json rejects = json::object();
  for (const auto& [alpha, reject] : test.reject_at)
    rejects[fmt("%g", alpha)] = reject;
  return {{"null_value", encode_double(test.null_value)},
          {"t_stat", encode_double(test.t_stat)},
          {"df", test.df},
          {"p_two_sided", encode_double(test.p_two_sided)},
          {"reject_at", rejects}};
}

HypothesisTest test_from_json(const json& node) {
  HypothesisTest test;
  test.null_value = decode_double(node.at("null_value"));
  test.t_stat = decode_double(node.at("t_stat"));
  test.df = node.at("df").get<int>();
  test.p_two_sided = decode_double(node.at("p_two_sided"));
  for (const auto& [key, value] : node.at("reject_at").items())
    test.reject_at[std::stod(key)] = value.get<bool>();
  return test;
}

json verdict_to_json(const TypologyVerdict& verdict) {
  return {{"label", to_string(verdict.label)},
          {"alpha", verdict.alpha},
          {"point_estimate", encode_double(verdict.point_estimate)},
          {"test_vs_zero", test_to_json(verdict.test_vs_zero)},
          {"test_vs_one", test_to_json(verdict.test_vs_one)},
          {"rationale", verdict.rationale}};
}

TypologyVerdict verdict_from_json(const json& node) {
  TypologyVerdict verdict;
  verdict.label = growth_label_from_string(node.at("label").get<std::string>());
  verdict.alpha = node.at("alpha").get<double>();
  verdict.point_estimate = decode_double(node.at("point_estimate"));
  verdict.test_vs_zero = test_from_json(node.at("test_vs_zero"));
  verdict.test_vs_one = test_from_json(node.at("test_vs_one"));
  verdict.rationale = node.at("rationale").get<std::string>();
  return verdict;
}

const char* rate_method_name(RateMethod method) {
  return method == RateMethod::percent_change ? "percent-change" : "log-difference";
}

const char* smooth_order_name(SmoothOrder order) {
  return order == SmoothOrder::rate_first ? "rate-first" : "level-first";
}

}  // namespace

std::string emit_text(const Report& report) {
  std::size_t entity_width = 6;
  for (const auto& record : report.records)
    entity_width = std::max(entity_width, record.entity.size());
  entity_width += 2;

  constexpr std::size_t b_width = 20;
  constexpr std::size_t typology_width = 26;

  std::ostringstream out;
  out << "Reference: " << report.reference << "  alpha=" << fmt("%g", report.alpha)
      << "  rates=" << rate_method_name(report.preprocess.rate_method)
      << "  ma-window=" << report.preprocess.ma_window
      << "  smoothing=" << smooth_order_name(report.preprocess.smooth_order);
  if (report.preprocess.rebase_year)
    out << "  rebase-year=" << *report.preprocess.rebase_year;
  out << '\n';
  out << pad("Entity", entity_width) << pad("B (SE)", b_width)
      << pad("Typology", typology_width) << "R2 adj" << '\n';
  out << std::string(entity_width - 2, '-') << "  " << std::string(b_width - 2, '-') << "  "
      << std::string(typology_width - 2, '-') << "  ------" << '\n';

  for (const auto& record : report.records) {
    out << pad(record.entity, entity_width);
    if (record.skipped) {
      out << pad("—", b_width + 2)  // em dash is 3 bytes; keep columns aligned
          << "skipped: " << record.skip_reason << '\n';
      continue;
    }
    const std::string b_cell = fmt("%.3f", record.b_hat) + significance_mark(*record.verdict) +
                               " (" + fmt("%.3f", record.se_b) + ")";
    out << pad(b_cell, b_width) << pad(to_string(record.verdict->label), typology_width)
        << fmt("%.3f", record.r2_adj) << '\n';
  }
  return out.str();
}

std::string report_to_json_string(const Report& report) {
  json records = json::array();
  for (const auto& record : report.records) {
    json node;
    node["entity"] = record.entity;
    node["skipped"] = record.skipped;
    if (record.skipped) {
      node["skip_reason"] = record.skip_reason;
    } else {
      node["n"] = record.n;
      node["intercept"] = encode_double(record.intercept);
      node["se_intercept"] = encode_double(record.se_intercept);
      node["b_hat"] = encode_double(record.b_hat);
      node["se_b"] = encode_double(record.se_b);
      node["s"] = encode_double(record.s);
      node["r2"] = encode_double(record.r2);
      node["r2_adj"] = encode_double(record.r2_adj);
      node["f_stat"] = encode_double(record.f_stat);
      node["f_p"] = encode_double(record.f_p);
      node["dw"] = encode_double(record.dw);
      node["verdict"] = verdict_to_json(*record.verdict);
      node["fitted_relation"] = record.fitted_relation;
    }
    json dropped = json::array();
    for (const auto& drop : record.dropped)
      dropped.push_back({{"year", drop.year}, {"reason", drop.reason}});
    node["dropped"] = dropped;
    records.push_back(std::move(node));
  }

  json preprocess = {{"rate_method", rate_method_name(report.preprocess.rate_method)},
                     {"ma_window", report.preprocess.ma_window},
                     {"smooth_order", smooth_order_name(report.preprocess.smooth_order)}};
  if (report.preprocess.rebase_year)
    preprocess["rebase_year"] = *report.preprocess.rebase_year;
  else
    preprocess["rebase_year"] = nullptr;

  const json root = {{"version", report.version},
                     {"reference", report.reference},
                     {"alpha", report.alpha},
                     {"preprocess", preprocess},
                     {"records", records}};
  return root.dump(2) + "\n";
}

void emit_json(const Report& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << report_to_json_string(report);
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

Report parse_report_json(const std::string& text) {
  const json root = json::parse(text);
  Report report;
  report.version = root.at("version").get<std::string>();
  report.reference = root.at("reference").get<std::string>();
  report.alpha = root.at("alpha").get<double>();

  const json& preprocess = root.at("preprocess");
  const std::string method = preprocess.at("rate_method").get<std::string>();
  report.preprocess.rate_method =
      method == "percent-change" ? RateMethod::percent_change : RateMethod::log_difference;
  report.preprocess.ma_window = preprocess.at("ma_window").get<int>();
  const std::string order = preprocess.at("smooth_order").get<std::string>();
  report.preprocess.smooth_order =
      order == "rate-first" ? SmoothOrder::rate_first : SmoothOrder::level_first;
  if (!preprocess.at("rebase_year").is_null())
    report.preprocess.rebase_year = preprocess.at("rebase_year").get<int>();

  for (const json& node : root.at("records")) {
    EntityRecord record;
    record.entity = node.at("entity").get<std::string>();
    record.skipped = node.at("skipped").get<bool>();
    if (record.skipped) {
      record.skip_reason = node.at("skip_reason").get<std::string>();
    } else {
      record.n = node.at("n").get<int>();
      record.intercept = decode_double(node.at("intercept"));
      record.se_intercept = decode_double(node.at("se_intercept"));
      record.b_hat = decode_double(node.at("b_hat"));
      record.se_b = decode_double(node.at("se_b"));
      record.s = decode_double(node.at("s"));
      record.r2 = decode_double(node.at("r2"));
      record.r2_adj = decode_double(node.at("r2_adj"));
      record.f_stat = decode_double(node.at("f_stat"));
      record.f_p = decode_double(node.at("f_p"));
      record.dw = decode_double(node.at("dw"));
      record.verdict = verdict_from_json(node.at("verdict"));
      record.fitted_relation = node.at("fitted_relation").get<std::string>();
    }
    for (const json& drop : node.at("dropped"))
      record.dropped.push_back(
          {drop.at("year").get<int>(), drop.at("reason").get<std::string>()});
    report.records.push_back(std::move(record));
  }
  return report;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }

  ScenarioSpec spec;
  const std::string family = root.at("family").get<std::string>();
  if (family == "logistic")
    spec.family = CurveFamily::logistic;
  else if (family == "gompertz")
    spec.family = CurveFamily::gompertz;
  else
    throw std::runtime_error("unknown curve family: " + family);

  auto parse_curve = [&](const json& node) {
    CurveSpec curve;
    curve.capacity = node.at("capacity").get<double>();
    curve.rate = node.at("rate").get<double>();
    curve.locus = spec.family == CurveFamily::logistic
                      ? node.at("inflection_time").get<double>()
                      : node.at("shape").get<double>();
    return curve;
  };
  spec.curve_y = parse_curve(root.at("curve_y"));
  spec.curve_x = parse_curve(root.at("curve_x"));
  spec.year_start = root.at("years").at("start").get<int>();
  spec.year_end = root.at("years").at("end").get<int>();
  spec.noise_sd = root.value("noise_sd", 0.0);
  spec.seed = root.value("seed", std::uint64_t{0});
  spec.target_name = root.value("target_name", std::string("target"));
  spec.reference_name = root.value("reference_name", std::string("reference"));
  return spec;
}

}  // namespace allometry
