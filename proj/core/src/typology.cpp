#include "allometry/typology.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace allometry {

namespace {

HypothesisTest summary_test(double b_hat, double se, int df, double null_value) {
  HypothesisTest test;
  test.null_value = null_value;
  test.df = df;
  if (se == 0.0) {
    test.t_stat = b_hat == null_value ? 0.0
                  : (b_hat > null_value ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity());
  } else {
    test.t_stat = (b_hat - null_value) / se;
  }
  if (std::isinf(test.t_stat))
    test.p_two_sided = 0.0;
  else if (test.t_stat == 0.0)
    test.p_two_sided = 1.0;
  else
    test.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::abs(test.t_stat), df));
  if (test.p_two_sided > 1.0) test.p_two_sided = 1.0;
  for (double alpha : {0.10, 0.05, 0.01, 0.001})
    test.reject_at[alpha] = test.p_two_sided <= alpha;
  return test;
}

std::string format_rationale(double b_hat, double alpha, const HypothesisTest& t0,
                             const HypothesisTest& t1, bool sig0, bool rej1,
                             double p1_directional, GrowthLabel label) {
  char buffer[512];
  const char* direction = b_hat > 1.0 ? "B>1" : (b_hat < 1.0 ? "B<1" : "none");
  std::snprintf(buffer, sizeof(buffer),
                "B-hat=%.6g; H0:B=0 two-sided p=%.4g (%ssignificant at alpha=%g); "
                "H0:B=1 one-tailed toward %s p=%.4g (%s at alpha=%g); t0=%.4g t1=%.4g df=%d "
                "-> %s",
                b_hat, t0.p_two_sided, sig0 ? "" : "not ", alpha, direction,
                p1_directional, rej1 ? "rejected" : "not rejected", alpha, t0.t_stat,
                t1.t_stat, t0.df, to_string(label).c_str());
  return buffer;
}

TypologyVerdict classify_impl(double b_hat, const HypothesisTest& t0,
                              const HypothesisTest& t1, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");

  const bool sig0 = t0.p_two_sided <= alpha;
  // Directional comparison with 1: the tail on the side of the observed
  // deviation. At b_hat == 1 there is no direction and nothing to reject.
  const double p1_directional = b_hat == 1.0 ? 0.5 : 0.5 * t1.p_two_sided;
  const bool rej1 = b_hat != 1.0 && p1_directional <= alpha;

  GrowthLabel label;
  if (sig0 && rej1)
    label = b_hat > 1.0 ? GrowthLabel::PositiveAllometry : GrowthLabel::NegativeAllometry;
  else if (sig0)
    label = GrowthLabel::Isometry;
  else if (rej1)
    label = b_hat > 1.0 ? GrowthLabel::SuspectPositiveAllometry
                        : GrowthLabel::SuspectNegativeAllometry;
  else
    label = GrowthLabel::SuspectIsometry;

  TypologyVerdict verdict;
  verdict.label = label;
  verdict.alpha = alpha;
  verdict.test_vs_zero = t0;
  verdict.test_vs_one = t1;
  verdict.point_estimate = b_hat;
  verdict.rationale =
      format_rationale(b_hat, alpha, t0, t1, sig0, rej1, p1_directional, label);
  return verdict;
}

}  // namespace

std::string to_string(GrowthLabel label) {
  switch (label) {
    case GrowthLabel::Isometry: return "Isometry";
    case GrowthLabel::PositiveAllometry: return "PositiveAllometry";
    case GrowthLabel::NegativeAllometry: return "NegativeAllometry";
    case GrowthLabel::SuspectIsometry: return "SuspectIsometry";
    case GrowthLabel::SuspectPositiveAllometry: return "SuspectPositiveAllometry";
    case GrowthLabel::SuspectNegativeAllometry: return "SuspectNegativeAllometry";
  }
  return "unknown";
}

GrowthLabel growth_label_from_string(const std::string& s) {
  for (GrowthLabel label :
       {GrowthLabel::Isometry, GrowthLabel::PositiveAllometry,
        GrowthLabel::NegativeAllometry, GrowthLabel::SuspectIsometry,
        GrowthLabel::SuspectPositiveAllometry, GrowthLabel::SuspectNegativeAllometry})
    if (to_string(label) == s) return label;
  throw std::invalid_argument("unknown growth label: " + s);
}

TypologyVerdict classify(const OlsFit& fit, double alpha) {
  return classify_impl(fit.slope, t_test(fit, 0.0), t_test(fit, 1.0), alpha);
}

TypologyVerdict classify_from_summary(double b_hat, double se, int n, double alpha) {
  if (!(se > 0.0)) throw std::invalid_argument("standard error must be positive");
  if (n < 3) throw std::invalid_argument("summary classification needs n >= 3");
  const int df = n - 2;
  return classify_impl(b_hat, summary_test(b_hat, se, df, 0.0),
                       summary_test(b_hat, se, df, 1.0), alpha);
}

std::string render_relation(const OlsFit& fit, const std::string& target,
                            const std::string& reference) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), "%s y_t = %.3f · %s x_t^%.3f",
                target.c_str(), std::exp(fit.intercept), reference.c_str(), fit.slope);
  return buffer;
}

}  // namespace allometry
