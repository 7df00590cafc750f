#pragma once

// S-shaped growth curves and the power-law relation X = A * Y^B between two
// systems growing along them. The exponent B is the ratio of the intrinsic
// growth rates; three derivations are provided (logistic pair, equal-rate
// Gompertz pair, generalized two-parameter family) plus least-squares fits
// that recover curve parameters from observed level series.

#include <stdexcept>
#include <string>

#include "allometry/timeseries.hpp"

namespace allometry {

// Thrown when a series cannot be explained by the requested curve family
// (non-increasing data, degenerate capacity search, ...).
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

// Y(t) = capacity / (1 + exp(rate * (inflection_time - t))).
// Symmetric S-curve; level at the inflection time is capacity/2.
struct LogisticCurve {
  double capacity;         // K > 0, equilibrium level
  double rate;             // b > 0, per unit time
  double inflection_time;  // t1; the constant a = rate * inflection_time

  LogisticCurve(double capacity, double rate, double inflection_time);
};

// Y(t) = capacity * exp(-exp(shape - rate * t)).
// Asymmetric S-curve; level at the inflection time shape/rate is capacity/e.
struct GompertzCurve {
  double capacity;  // K > 0
  double rate;      // J > 0, per unit time
  double shape;     // I, dimensionless; G = e^I

  GompertzCurve(double capacity, double rate, double shape);

  double inflection_time() const { return shape / rate; }
};

enum class AllometryDerivation { logistic_pair, gompertz_equal_rate, generalized, fitted };

std::string to_string(AllometryDerivation d);

// X = scale * Y^exponent, with provenance of how the parameters were derived.
struct AllometricRelation {
  double scale;     // A > 0
  double exponent;  // B
  AllometryDerivation derivation;
};

// Total on all t; level in (0, capacity), increasing, -> capacity as t -> inf.
double logistic_eval(const LogisticCurve& curve, double t) noexcept;

// ln((capacity - level)/level); the linearization of the logistic curve.
// Equals rate*inflection_time - rate*t when level = logistic_eval(t).
// Throws std::domain_error unless 0 < level < capacity.
double logistic_logit(const LogisticCurve& curve, double level);

double gompertz_eval(const GompertzCurve& curve, double t) noexcept;

// ln(ln(capacity/level)); equals shape - rate*t when level = gompertz_eval(t).
// Throws std::domain_error unless 0 < level < capacity.
double gompertz_loglog(const GompertzCurve& curve, double level);

// Exponent b_x/b_y exactly; scale K_x * (K_y * C)^(-exponent) with
// C = exp(b_y * (t_x - t_y)) from the inflection times.
AllometricRelation derive_allometry_logistic(const LogisticCurve& curve_y,
                                             const LogisticCurve& curve_x);

// Equal-rate (v = 1) Gompertz case: M = exp(I_y - I_x), exponent 1/M,
// scale K_x / K_y^(1/M). Rates must agree within 1e-12 relative; otherwise
// throws std::invalid_argument (use gompertz_relation_exact instead).
AllometricRelation derive_allometry_gompertz(const GompertzCurve& curve_y,
                                             const GompertzCurve& curve_x);

// Exact cross-curve relation y = K_y * exp(-M * ln(K_x/x)^v) with
// v = J_y/J_x and M = G_y / G_x^v; valid for any rate pair.
// Throws std::domain_error unless 0 < x < curve_x.capacity.
double gompertz_relation_exact(const GompertzCurve& curve_y,
                               const GompertzCurve& curve_x, double x);

// Generalized family: m = k1*u1/(k2*u2), exponent 1/m, scale (k2/k1)^(1/m).
// With u = b/K this reproduces the logistic exponent.
AllometricRelation derive_allometry_generalized(double k1, double u1,
                                                double k2, double u2);

// scale * y^exponent. Throws std::domain_error for y <= 0.
double allometric_eval(const AllometricRelation& relation, double y);

// Least-squares fits: golden-section search for the capacity over
// (max * (1+1e-9), max * 10], with a closed-form fit of the linearized model
// inside and the objective measured in level space. Need >= 4 positive,
// not-all-equal observations; throw FitError when the series is
// non-increasing overall or the search finds no interior minimum.
LogisticCurve fit_logistic(const GrowthSeries& series);
GompertzCurve fit_gompertz(const GrowthSeries& series);

}  // namespace allometry
