#include "allometry/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace allometry {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the regularized incomplete beta (modified Lentz).
double incbeta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
double incbeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * incbeta_cf(a, b, x) / a;
  return 1.0 - front * incbeta_cf(b, a, 1.0 - x) / b;
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

double two_sided_p(double t, int df) {
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return clamp01(incbeta(0.5 * df, 0.5, x));
}

}  // namespace

double student_t_cdf(double t, int df) {
  if (df < 1) throw std::invalid_argument("student_t_cdf needs df >= 1");
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  if (t == 0.0) return 0.5;
  const double tail = 0.5 * two_sided_p(t, df);
  return t > 0.0 ? 1.0 - tail : tail;
}

double f_sf(double f, int df1, int df2) {
  if (df1 < 1 || df2 < 1) throw std::invalid_argument("f_sf needs positive df");
  if (std::isinf(f)) return 0.0;
  if (f <= 0.0) return 1.0;
  return clamp01(incbeta(0.5 * df2, 0.5 * df1, df2 / (df2 + df1 * f)));
}

double durbin_watson(std::span<const double> residuals) {
  if (residuals.size() < 2)
    throw std::invalid_argument("durbin_watson needs at least 2 residuals");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (i > 0) {
      const double diff = residuals[i] - residuals[i - 1];
      num += diff * diff;
    }
    den += residuals[i] * residuals[i];
  }
  if (den == 0.0) throw std::invalid_argument("durbin_watson is undefined for all-zero residuals");
  return num / den;
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw std::invalid_argument("regression needs at least 3 points");
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  if (*xmin == *xmax) throw std::invalid_argument("degenerate regressor (zero variance)");

  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += x[i];
    ybar += y[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar;
    const double dy = y[i] - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  OlsFit fit;
  fit.n = static_cast<int>(n);
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  fit.residuals.resize(n);
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += fit.residuals[i] * fit.residuals[i];
  }

  const int df = fit.n - 2;
  fit.r2 = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
  fit.r2_adj = 1.0 - (1.0 - fit.r2) * (fit.n - 1) / static_cast<double>(df);
  fit.s = std::sqrt(sse / df);
  fit.se_slope = fit.s / std::sqrt(sxx);
  fit.se_intercept = fit.s * std::sqrt(1.0 / fit.n + xbar * xbar / sxx);

  if (sse == 0.0) {
    fit.f_stat = kInf;
    fit.f_p = 0.0;
  } else {
    const double t0 = fit.slope / fit.se_slope;
    fit.f_stat = t0 * t0;
    fit.f_p = f_sf(fit.f_stat, 1, df);
  }
  fit.dw = sse == 0.0 ? 0.0 : durbin_watson(fit.residuals);
  return fit;
}

OlsFit ols_fit(const PairedSample& sample) {
  std::vector<double> x, y;
  x.reserve(sample.pairs.size());
  y.reserve(sample.pairs.size());
  for (const auto& pair : sample.pairs) {
    x.push_back(pair.ln_x);
    y.push_back(pair.ln_y);
  }
  return ols_fit(x, y);
}

HypothesisTest t_test(const OlsFit& fit, double null_value) {
  HypothesisTest test;
  test.null_value = null_value;
  test.df = fit.n - 2;
  if (fit.se_slope == 0.0) {
    // Perfect-fit sentinel: infinitely sharp estimate.
    test.t_stat = fit.slope == null_value ? 0.0
                  : (fit.slope > null_value ? kInf : -kInf);
  } else {
    test.t_stat = (fit.slope - null_value) / fit.se_slope;
  }
  test.p_two_sided = two_sided_p(test.t_stat, test.df);
  for (double alpha : {0.10, 0.05, 0.01, 0.001})
    test.reject_at[alpha] = test.p_two_sided <= alpha;
  return test;
}

std::pair<double, double> f_test(const OlsFit& fit) {
  if (fit.se_slope == 0.0) {
    if (fit.slope == 0.0) return {0.0, 1.0};
    return {kInf, 0.0};
  }
  const double t0 = fit.slope / fit.se_slope;
  const double f = t0 * t0;
  return {f, f_sf(f, 1, fit.n - 2)};
}

}  // namespace allometry
