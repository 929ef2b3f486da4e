#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "doctest.h"
#include "stylobench/errors.h"
#include "stylobench/evaluation/stats.h"
#include "stylobench/random.h"
#include "yuen_fixtures.h"

using namespace stylobench;

TEST_SUITE("stats") {

TEST_CASE("t distribution agrees with boost") {
  for (double df : {1.0, 2.5, 5.0, 12.3, 30.0, 200.0}) {
    boost::math::students_t dist(df);
    for (double t : {-6.0, -2.2, -0.7, 0.0, 0.3, 1.96, 4.5}) {
      double expected = boost::math::cdf(dist, t);
      CHECK(StudentTCdf(t, df) == doctest::Approx(expected).epsilon(1e-10));
      double two = 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
      CHECK(StudentTTwoSidedP(t, df) == doctest::Approx(two).epsilon(1e-10));
    }
  }
}

TEST_CASE("incomplete beta edge values") {
  CHECK(RegularizedIncompleteBeta(2, 3, 0) == 0);
  CHECK(RegularizedIncompleteBeta(2, 3, 1) == 1);
  // I_x(1, 1) = x; I_x(a, 1) = x^a.
  CHECK(RegularizedIncompleteBeta(1, 1, 0.37) == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(RegularizedIncompleteBeta(3, 1, 0.5) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("trimmed mean and winsorized variance") {
  std::vector<double> v = {1, 2, 3, 4, 100, 5, 6, 7, 8, 9};
  // 20% of 10: drop 2 from each end -> 3..8 without 100 and 1, 2, 9.
  CHECK(TrimmedMean(v, 0.2) == doctest::Approx((3 + 4 + 5 + 6 + 7 + 8) / 6.0));
  // Winsorized: 3 3 3 4 5 6 7 8 8 8.
  std::vector<double> w = {3, 3, 3, 4, 5, 6, 7, 8, 8, 8};
  double mean = 55 / 10.0, ss = 0;
  for (double x : w) ss += (x - mean) * (x - mean);
  CHECK(WinsorizedVariance(v, 0.2) == doctest::Approx(ss / 9));
  CHECK(TrimmedMean(v, 0.0) == doctest::Approx(14.5));
}

TEST_CASE("identical samples") {
  std::vector<double> a = {0.3, 1.2, 2.2, 0.9, 4.1, 1.0};
  auto r = YuenTTest(a, a);
  CHECK(r.t == 0.0);
  CHECK(r.p == 1.0);
}

TEST_CASE("reference fixtures") {
  for (const auto& f : testing::kYuenFixtures) {
    auto r = YuenTTest(f.a, f.b, 0.2);
    CHECK(r.t == doctest::Approx(f.t).epsilon(1e-9));
    CHECK(r.df == doctest::Approx(f.df).epsilon(1e-9));
    CHECK(r.p == doctest::Approx(f.p).epsilon(1e-8));
  }
}

TEST_CASE("welch special case") {
  // a = 1..5: mean 3, s^2 = 2.5; b = 2,4,..,12: mean 7, s^2 = 14.
  // se^2 = 2.5/5 + 14/6 = 17/6, t = -4 / sqrt(17/6).
  // df = (17/6)^2 / ((1/2)^2/4 + (7/3)^2/5) = (289/36) / (1/16 + 49/45).
  std::vector<double> a = {1, 2, 3, 4, 5};
  std::vector<double> b = {2, 4, 6, 8, 10, 12};
  auto r = YuenTTest(a, b, 0.0);
  const double t = -4 / std::sqrt(17.0 / 6);
  const double df = (289.0 / 36) / (1.0 / 16 + 49.0 / 45);
  CHECK(std::fabs(r.t - t) < 1e-6);
  CHECK(std::fabs(r.df - df) < 1e-6);
  CHECK(std::fabs(r.t - (-2.376354)) < 1e-6);
  CHECK(std::fabs(r.df - 6.972256) < 1e-6);
}

TEST_CASE("degenerate variances") {
  std::vector<double> a = {2, 2, 2, 2, 2};
  std::vector<double> b = {2, 2, 2, 2, 2, 2};
  auto same = YuenTTest(a, b);
  CHECK(same.t == 0);
  CHECK(same.p == 1);
  std::vector<double> c = {3, 3, 3, 3, 3};
  auto diff = YuenTTest(a, c);
  CHECK(std::isinf(diff.t));
  CHECK(diff.t < 0);
  CHECK(diff.p == 0);
}

TEST_CASE("too small samples and bad trim") {
  std::vector<double> three = {1, 2, 3};
  std::vector<double> one = {1};
  CHECK_NOTHROW(YuenTTest(three, three));
  CHECK_THROWS_AS(YuenTTest(three, one), SampleTooSmall);
  std::vector<double> four = {1, 2, 3, 4};
  // floor(0.4 * 4) = 1 per end leaves 2.
  CHECK_NOTHROW(YuenTTest(four, four, 0.4));
  CHECK_THROWS_AS(YuenTTest(four, four, 0.5), SampleTooSmall);
  CHECK_THROWS_AS(YuenTTest(four, four, -0.1), SampleTooSmall);
}

TEST_CASE("p is symmetric in the samples and within [0, 1]") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(5 + rng.Index(20)), b(5 + rng.Index(20));
    for (auto& x : a) x = rng.Uniform() * 3;
    for (auto& x : b) x = rng.Uniform() * 3 + 0.5;
    auto ab = YuenTTest(a, b), ba = YuenTTest(b, a);
    CHECK(ab.t == doctest::Approx(-ba.t));
    CHECK(ab.p == doctest::Approx(ba.p));
    CHECK(ab.p >= 0);
    CHECK(ab.p <= 1);
  }
}

TEST_CASE("lower median") {
  std::vector<double> odd = {5, 1, 3};
  std::vector<double> even = {4, 1, 3, 2};
  CHECK(LowerMedian(odd) == 3);
  CHECK(LowerMedian(even) == 2);
  std::vector<double> none;
  CHECK_THROWS_AS(LowerMedian(none), EmptyResults);
}

}  // TEST_SUITE
