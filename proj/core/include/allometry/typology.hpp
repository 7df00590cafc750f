#pragma once

// Turns a fitted slope into a growth classification: isometry (B = 1),
// positive allometry (B > 1, development), negative allometry (B < 1,
// under-development), with "suspect" variants when the slope itself is not
// significant.

#include <string>

#include "allometry/inference.hpp"

namespace allometry {

enum class GrowthLabel {
  Isometry,
  PositiveAllometry,
  NegativeAllometry,
  SuspectIsometry,
  SuspectPositiveAllometry,
  SuspectNegativeAllometry,
};

std::string to_string(GrowthLabel label);
GrowthLabel growth_label_from_string(const std::string& s);

struct TypologyVerdict {
  GrowthLabel label = GrowthLabel::SuspectIsometry;
  double alpha = 0.05;
  HypothesisTest test_vs_zero;
  HypothesisTest test_vs_one;
  double point_estimate = 0.0;  // B-hat
  std::string rationale;
};

// Decision rule, with sig0 = two-sided significance of B against 0 at alpha
// and rej1 = one-tailed rejection of B = 1 toward sign(B-hat - 1) at alpha:
//   sig0 &&  rej1  -> PositiveAllometry (B-hat > 1) / NegativeAllometry
//   sig0 && !rej1  -> Isometry
//  !sig0 &&  rej1  -> SuspectPositive/SuspectNegativeAllometry by sign
//  !sig0 && !rej1  -> SuspectIsometry
// The B = 1 comparison is directional because the competing hypotheses are
// (B > 1: development, B < 1: under-development).
TypologyVerdict classify(const OlsFit& fit, double alpha);

// Same rule fed by published summary statistics (slope, its standard error,
// sample size) so printed tables can be checked without the raw series.
TypologyVerdict classify_from_summary(double b_hat, double se, int n, double alpha);

// "TARGET y_t = a . REFERENCE x_t^B" with a = exp(intercept), both numbers
// rendered to 3 decimals.
std::string render_relation(const OlsFit& fit, const std::string& target,
                            const std::string& reference);

}  // namespace allometry
