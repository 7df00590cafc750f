#include "allometry/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace allometry {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 84.0;  // room for the x label and caption

std::string fmt(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo, hi;
  double span() const { return hi - lo; }
};

Range padded(double lo, double hi) {
  double span = hi - lo;
  if (span <= 0.0) span = std::max(std::abs(lo), 1.0) * 0.1;
  return {lo - 0.05 * span, hi + 0.05 * span};
}

}  // namespace

std::string render_svg(const EntityRecord& record, const PairedSample& pairs) {
  if (record.skipped)
    throw std::invalid_argument("cannot plot a skipped record: " + record.entity);
  if (pairs.pairs.empty()) throw std::invalid_argument("no pairs to plot");

  double xmin = pairs.pairs.front().ln_x, xmax = xmin;
  double ymin = pairs.pairs.front().ln_y, ymax = ymin;
  double xc = 0.0, yc = 0.0;
  for (const auto& p : pairs.pairs) {
    xmin = std::min(xmin, p.ln_x);
    xmax = std::max(xmax, p.ln_x);
    ymin = std::min(ymin, p.ln_y);
    ymax = std::max(ymax, p.ln_y);
    xc += p.ln_x;
    yc += p.ln_y;
  }
  xc /= static_cast<double>(pairs.pairs.size());
  yc /= static_cast<double>(pairs.pairs.size());

  const Range xr = padded(xmin, xmax);
  // Both lines must stay on canvas: widen the y range to cover them.
  double ylo = ymin, yhi = ymax;
  for (double x : {xr.lo, xr.hi}) {
    ylo = std::min({ylo, record.intercept + record.b_hat * x, yc + (x - xc)});
    yhi = std::max({yhi, record.intercept + record.b_hat * x, yc + (x - xc)});
  }
  const Range yr = padded(ylo, yhi);

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double lnx) { return kMarginLeft + (lnx - xr.lo) / xr.span() * plot_w; };
  auto py = [&](double lny) { return kMarginTop + plot_h - (lny - yr.lo) / yr.span() * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(kMarginTop + plot_h)
      << "\" x2=\"" << fmt(kMarginLeft + plot_w) << "\" y2=\"" << fmt(kMarginTop + plot_h)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(kMarginTop) << "\" x2=\""
      << fmt(kMarginLeft) << "\" y2=\"" << fmt(kMarginTop + plot_h)
      << "\" stroke=\"black\"/>\n";

  // ticks
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + xr.span() * i / 4.0;
    const double fy = yr.lo + yr.span() * i / 4.0;
    svg << "<line x1=\"" << fmt(px(fx)) << "\" y1=\"" << fmt(kMarginTop + plot_h)
        << "\" x2=\"" << fmt(px(fx)) << "\" y2=\"" << fmt(kMarginTop + plot_h + 5)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << fmt(kMarginTop + plot_h + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    svg << "<line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(py(fy)) << "\" x2=\""
        << fmt(kMarginLeft) << "\" y2=\"" << fmt(py(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py(fy) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }

  // axis labels
  svg << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
      << fmt(kMarginTop + plot_h + 38) << "\" font-size=\"13\" text-anchor=\"middle\">ln x_t ("
      << escape_xml(pairs.reference_entity) << " growth rate)</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(kMarginTop + plot_h / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(kMarginTop + plot_h / 2) << ")\">ln y_t (" << escape_xml(pairs.target_entity)
      << " growth rate)</text>\n";

  // slope-1 reference line through the centroid, then the fitted line on top
  svg << "<line class=\"ref\" x1=\"" << fmt(px(xr.lo)) << "\" y1=\"" << fmt(py(yc + (xr.lo - xc)))
      << "\" x2=\"" << fmt(px(xr.hi)) << "\" y2=\"" << fmt(py(yc + (xr.hi - xc)))
      << "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<line class=\"fit\" x1=\"" << fmt(px(xr.lo)) << "\" y1=\""
      << fmt(py(record.intercept + record.b_hat * xr.lo)) << "\" x2=\"" << fmt(px(xr.hi))
      << "\" y2=\"" << fmt(py(record.intercept + record.b_hat * xr.hi))
      << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";

  for (const auto& p : pairs.pairs)
    svg << "<circle cx=\"" << fmt(px(p.ln_x)) << "\" cy=\"" << fmt(py(p.ln_y))
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";

  svg << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 14)
      << "\" font-size=\"13\" text-anchor=\"middle\">" << escape_xml(record.fitted_relation)
      << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const EntityRecord& record, const PairedSample& pairs,
              const std::filesystem::path& path) {
  const std::string body = render_svg(record, pairs);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace allometry
