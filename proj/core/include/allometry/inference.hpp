#pragma once

// Simple linear regression with the full statistic set reported alongside it:
// coefficient standard errors, adjusted R^2, residual standard error, F test,
// t tests against arbitrary null values, and the Durbin-Watson statistic.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "allometry/timeseries.hpp"

namespace allometry {

struct OlsFit {
  int n = 0;
  double intercept = 0.0;  // ln a
  double slope = 0.0;      // B-hat
  double se_intercept = 0.0;
  double se_slope = 0.0;
  double s = 0.0;  // residual standard error, sqrt(SSE/(n-2))
  double r2 = 0.0;
  double r2_adj = 0.0;
  double f_stat = 0.0;  // +inf sentinel for perfect fits
  double f_p = 0.0;
  double dw = 0.0;  // in [0,4]; 0 for the zero-residual degenerate case
  std::vector<double> residuals;
};

struct HypothesisTest {
  double null_value = 0.0;
  double t_stat = 0.0;  // signed-infinity sentinel when se = 0 and slope != null
  int df = 0;
  double p_two_sided = 1.0;
  std::map<double, bool> reject_at;  // at {0.10, 0.05, 0.01, 0.001}
};

// Closed-form normal-equation solution of y = intercept + slope * x.
// Needs >= 3 points and a non-constant regressor (std::invalid_argument
// otherwise). Zero-SSE fits get the documented sentinels: s = se = 0,
// f_stat = +inf, f_p = 0.
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

// Regression of ln y (target) on ln x (reference).
OlsFit ols_fit(const PairedSample& sample);

// t = (slope - null_value)/se_slope with df = n - 2; two-sided p.
HypothesisTest t_test(const OlsFit& fit, double null_value);

// Exact CDF through the regularized incomplete beta function.
double student_t_cdf(double t, int df);

// Survival function of the F(df1, df2) distribution.
double f_sf(double f, int df1, int df2);

// d = sum_t (e_t - e_{t-1})^2 / sum_t e_t^2, in [0, 4].
// Throws std::invalid_argument for < 2 residuals or an all-zero vector.
double durbin_watson(std::span<const double> residuals);

// Regression F with (1, n-2) degrees of freedom and its p-value; equals the
// squared t statistic against null 0.
std::pair<double, double> f_test(const OlsFit& fit);

}  // namespace allometry
