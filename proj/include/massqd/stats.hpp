#pragma once

#include <span>

namespace massqd {

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> xs);

// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  bool significant = false;  // p_value < alpha
};

inline constexpr double kSignificanceLevel = 0.05;

// Welch's unequal-variance two-sample t-test, two-sided.
// Each sample needs at least two values (std::invalid_argument otherwise).
// Two constant samples give p = 1 with equal means and p = 0 otherwise.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b,
                         double alpha = kSignificanceLevel);

}  // namespace massqd
