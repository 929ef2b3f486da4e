#ifndef STYLOBENCH_EVALUATION_STATS_H_
#define STYLOBENCH_EVALUATION_STATS_H_

#include <span>

namespace stylobench {

// I_x(a, b), by continued fraction.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(T <= t) for Student's t with `df` degrees of freedom.
double StudentTCdf(double t, double df);

// P(|T| >= |t|).
double StudentTTwoSidedP(double t, double df);

struct TTestResult {
  double t = 0;
  double df = 0;
  double p = 1;
};

double TrimmedMean(std::span<const double> sample, double trim);
double WinsorizedVariance(std::span<const double> sample, double trim);

// Yuen's two-sample trimmed-means test (Welch's test when trim is 0).
// Throws SampleTooSmall unless both samples keep at least 2 values after
// trimming floor(trim * n) from each end.
TTestResult YuenTTest(std::span<const double> a, std::span<const double> b,
                      double trim = 0.2);

// Lower middle element for even sizes. Throws EmptyResults.
double LowerMedian(std::span<const double> values);

}  // namespace stylobench

#endif  // STYLOBENCH_EVALUATION_STATS_H_
