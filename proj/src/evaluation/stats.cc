#include "stylobench/evaluation/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stylobench/errors.h"

namespace stylobench {
namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < kEps) break;
  }
  return h;
}

std::vector<double> Sorted(std::span<const double> s) {
  std::vector<double> v(s.begin(), s.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t TrimCount(std::size_t n, double trim) {
  return static_cast<std::size_t>(std::floor(trim * static_cast<double>(n)));
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1) / (a + b + 2)) {
    return std::exp(log_front) * BetaContinuedFraction(a, b, x) / a;
  }
  return 1 - std::exp(log_front) * BetaContinuedFraction(b, a, 1 - x) / b;
}

double StudentTTwoSidedP(double t, double df) {
  if (std::isinf(t)) return 0;
  if (t == 0) return 1;
  return RegularizedIncompleteBeta(df / 2, 0.5, df / (df + t * t));
}

double StudentTCdf(double t, double df) {
  double tail = StudentTTwoSidedP(t, df) / 2;
  return t < 0 ? tail : 1 - tail;
}

double TrimmedMean(std::span<const double> sample, double trim) {
  std::vector<double> v = Sorted(sample);
  std::size_t g = TrimCount(v.size(), trim);
  if (v.size() <= 2 * g) throw SampleTooSmall("nothing left after trimming");
  double sum = 0;
  for (std::size_t i = g; i < v.size() - g; ++i) sum += v[i];
  return sum / static_cast<double>(v.size() - 2 * g);
}

double WinsorizedVariance(std::span<const double> sample, double trim) {
  std::vector<double> v = Sorted(sample);
  const std::size_t n = v.size();
  std::size_t g = TrimCount(n, trim);
  if (n < 2 || n <= 2 * g) throw SampleTooSmall("need at least 2 values");
  for (std::size_t i = 0; i < g; ++i) {
    v[i] = v[g];
    v[n - 1 - i] = v[n - 1 - g];
  }
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(n - 1);
}

TTestResult YuenTTest(std::span<const double> a, std::span<const double> b,
                      double trim) {
  if (!(trim >= 0 && trim < 0.5)) {
    throw SampleTooSmall("trim must be in [0, 0.5)");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ha = na - 2.0 * static_cast<double>(TrimCount(a.size(), trim));
  const double hb = nb - 2.0 * static_cast<double>(TrimCount(b.size(), trim));
  if (ha < 2 || hb < 2) {
    throw SampleTooSmall("samples of " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " values leave fewer than "
                         "2 after trimming");
  }
  const double da = (na - 1) * WinsorizedVariance(a, trim) / (ha * (ha - 1));
  const double db = (nb - 1) * WinsorizedVariance(b, trim) / (hb * (hb - 1));
  const double diff = TrimmedMean(a, trim) - TrimmedMean(b, trim);

  TTestResult r;
  if (da + db == 0) {
    r.df = ha + hb - 2;
    if (diff == 0) return {0, r.df, 1};
    r.t = diff > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
    r.p = 0;
    return r;
  }
  r.t = diff / std::sqrt(da + db);
  r.df = (da + db) * (da + db) / (da * da / (ha - 1) + db * db / (hb - 1));
  r.p = StudentTTwoSidedP(r.t, r.df);
  return r;
}

double LowerMedian(std::span<const double> values) {
  if (values.empty()) throw EmptyResults("median of no values");
  std::vector<double> v = Sorted(values);
  return v[(v.size() - 1) / 2];
}

}  // namespace stylobench
