#include "allometry/growth_curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace allometry {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Golden-section minimizer; assumes f is unimodal on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, int iterations = 200) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    }
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

// Closed-form fit of z = intercept - slope_mag * t (slope reported with the
// sign convention of the linearized growth models).
struct LinearLaw {
  double intercept;
  double decay;  // coefficient on -t
};

LinearLaw fit_linear_law(const std::vector<double>& t, const std::vector<double>& z) {
  const std::size_t n = t.size();
  double tbar = 0.0, zbar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    tbar += t[i];
    zbar += z[i];
  }
  tbar /= static_cast<double>(n);
  zbar /= static_cast<double>(n);
  double stt = 0.0, stz = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - tbar) * (t[i] - tbar);
    stz += (t[i] - tbar) * (z[i] - zbar);
  }
  const double slope = stz / stt;
  return {zbar - slope * tbar, -slope};
}

struct SeriesData {
  std::vector<double> t;
  std::vector<double> y;
  double max_level;
};

SeriesData check_fit_input(const GrowthSeries& series) {
  require(series.observations.size() >= 4, "fit needs at least 4 observations");
  SeriesData data;
  data.t.reserve(series.observations.size());
  data.y.reserve(series.observations.size());
  double max_level = -std::numeric_limits<double>::infinity();
  bool all_equal = true;
  for (const auto& obs : series.observations) {
    require(obs.value > 0.0, "fit needs positive levels");
    data.t.push_back(static_cast<double>(obs.year));
    data.y.push_back(obs.value);
    max_level = std::max(max_level, obs.value);
    if (obs.value != series.observations.front().value) all_equal = false;
  }
  if (all_equal) throw FitError("constant series");
  if (series.observations.back().value <= series.observations.front().value)
    throw FitError("series is not increasing overall");
  data.max_level = max_level;
  return data;
}

// Capacity search shared by both fits: golden section over
// (max*(1+1e-9), max*10], inner closed-form fit of the linearized model,
// objective = squared error in level space. Landing at a bracket edge means
// the family has no interior optimum for this data.
template <typename InnerFit, typename Eval>
double search_capacity(const SeriesData& data, InnerFit&& inner, Eval&& eval) {
  const double lo = data.max_level * (1.0 + 1e-9);
  const double hi = data.max_level * 10.0;
  auto sse = [&](double capacity) {
    const LinearLaw law = inner(capacity);
    double total = 0.0;
    for (std::size_t i = 0; i < data.t.size(); ++i) {
      const double r = eval(capacity, law, data.t[i]) - data.y[i];
      total += r * r;
    }
    return total;
  };
  const double capacity = golden_min(sse, lo, hi);
  const double span = hi - lo;
  if (capacity - lo < 1e-9 * span || hi - capacity < 1e-9 * span)
    throw FitError("capacity search found no interior minimum");
  return capacity;
}

}  // namespace

LogisticCurve::LogisticCurve(double capacity, double rate, double inflection_time)
    : capacity(capacity), rate(rate), inflection_time(inflection_time) {
  require(capacity > 0.0, "logistic capacity must be positive");
  require(rate > 0.0, "logistic rate must be positive");
}

GompertzCurve::GompertzCurve(double capacity, double rate, double shape)
    : capacity(capacity), rate(rate), shape(shape) {
  require(capacity > 0.0, "gompertz capacity must be positive");
  require(rate > 0.0, "gompertz rate must be positive");
}

std::string to_string(AllometryDerivation d) {
  switch (d) {
    case AllometryDerivation::logistic_pair: return "logistic-pair";
    case AllometryDerivation::gompertz_equal_rate: return "gompertz-equal-rate";
    case AllometryDerivation::generalized: return "generalized";
    case AllometryDerivation::fitted: return "fitted";
  }
  return "unknown";
}

double logistic_eval(const LogisticCurve& curve, double t) noexcept {
  return curve.capacity / (1.0 + std::exp(curve.rate * (curve.inflection_time - t)));
}

double logistic_logit(const LogisticCurve& curve, double level) {
  if (!(level > 0.0 && level < curve.capacity))
    throw std::domain_error("level must lie strictly between 0 and the capacity");
  return std::log((curve.capacity - level) / level);
}

double gompertz_eval(const GompertzCurve& curve, double t) noexcept {
  return curve.capacity * std::exp(-std::exp(curve.shape - curve.rate * t));
}

double gompertz_loglog(const GompertzCurve& curve, double level) {
  if (!(level > 0.0 && level < curve.capacity))
    throw std::domain_error("level must lie strictly between 0 and the capacity");
  return std::log(std::log(curve.capacity / level));
}

AllometricRelation derive_allometry_logistic(const LogisticCurve& curve_y,
                                             const LogisticCurve& curve_x) {
  const double exponent = curve_x.rate / curve_y.rate;
  const double c = std::exp(curve_y.rate * (curve_x.inflection_time - curve_y.inflection_time));
  const double scale = curve_x.capacity * std::pow(curve_y.capacity * c, -exponent);
  return {scale, exponent, AllometryDerivation::logistic_pair};
}

AllometricRelation derive_allometry_gompertz(const GompertzCurve& curve_y,
                                             const GompertzCurve& curve_x) {
  const double rate_gap = std::abs(curve_y.rate - curve_x.rate);
  if (rate_gap > 1e-12 * std::max(std::abs(curve_y.rate), std::abs(curve_x.rate)))
    throw std::invalid_argument(
        "equal-rate derivation needs matching rates; use gompertz_relation_exact");
  const double m = std::exp(curve_y.shape - curve_x.shape);
  const double exponent = 1.0 / m;
  const double scale = curve_x.capacity / std::pow(curve_y.capacity, exponent);
  return {scale, exponent, AllometryDerivation::gompertz_equal_rate};
}

double gompertz_relation_exact(const GompertzCurve& curve_y,
                               const GompertzCurve& curve_x, double x) {
  if (!(x > 0.0 && x < curve_x.capacity))
    throw std::domain_error("x must lie strictly between 0 and the reference capacity");
  const double v = curve_y.rate / curve_x.rate;
  const double m = std::exp(curve_y.shape - v * curve_x.shape);  // G_y / G_x^v
  return curve_y.capacity * std::exp(-m * std::pow(std::log(curve_x.capacity / x), v));
}

AllometricRelation derive_allometry_generalized(double k1, double u1,
                                                double k2, double u2) {
  if (!(k1 > 0.0 && u1 > 0.0 && k2 > 0.0 && u2 > 0.0))
    throw std::domain_error("generalized derivation needs positive parameters");
  const double m = (k1 * u1) / (k2 * u2);
  const double exponent = 1.0 / m;
  const double scale = std::pow(k2 / k1, exponent);
  return {scale, exponent, AllometryDerivation::generalized};
}

double allometric_eval(const AllometricRelation& relation, double y) {
  if (!(y > 0.0)) throw std::domain_error("allometric relation is defined for y > 0");
  return relation.scale * std::pow(y, relation.exponent);
}

LogisticCurve fit_logistic(const GrowthSeries& series) {
  const SeriesData data = check_fit_input(series);
  auto inner = [&](double capacity) {
    std::vector<double> z(data.y.size());
    for (std::size_t i = 0; i < data.y.size(); ++i)
      z[i] = std::log((capacity - data.y[i]) / data.y[i]);  // = a - b t
    return fit_linear_law(data.t, z);
  };
  auto eval = [](double capacity, const LinearLaw& law, double t) {
    return capacity / (1.0 + std::exp(law.intercept - law.decay * t));
  };
  const double capacity = search_capacity(data, inner, eval);
  const LinearLaw law = inner(capacity);
  if (!(law.decay > 0.0)) throw FitError("fitted growth rate is not positive");
  return {capacity, law.decay, law.intercept / law.decay};
}

GompertzCurve fit_gompertz(const GrowthSeries& series) {
  const SeriesData data = check_fit_input(series);
  auto inner = [&](double capacity) {
    std::vector<double> z(data.y.size());
    for (std::size_t i = 0; i < data.y.size(); ++i)
      z[i] = std::log(std::log(capacity / data.y[i]));  // = I - J t
    return fit_linear_law(data.t, z);
  };
  auto eval = [](double capacity, const LinearLaw& law, double t) {
    return capacity * std::exp(-std::exp(law.intercept - law.decay * t));
  };
  const double capacity = search_capacity(data, inner, eval);
  const LinearLaw law = inner(capacity);
  if (!(law.decay > 0.0)) throw FitError("fitted growth rate is not positive");
  return {capacity, law.decay, law.intercept};
}

}  // namespace allometry
