#ifndef STYLOBENCH_TESTS_YUEN_FIXTURES_H_
#define STYLOBENCH_TESTS_YUEN_FIXTURES_H_

#include <vector>

namespace stylobench::testing {

struct YuenFixture {
  std::vector<double> a;
  std::vector<double> b;
  double t;
  double df;
  double p;
};

// Computed once with scipy.stats.ttest_ind(a, b, trim=0.2, equal_var=False)
// (scipy 1.15) and frozen here.
inline const std::vector<YuenFixture> kYuenFixtures = {
    {{1.2, 3.4, 2.2, 5.1, 4.4, 2.9, 3.3, 8.7, 2.0, 3.1},
     {4.1, 5.6, 3.9, 7.7, 6.1, 5.0, 4.8, 12.5, 5.5, 6.2, 4.9},
     -3.8114242298109073, 8.459234061030054, 0.0046452081790362455},
    {{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0},
     {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8},
     0.9643788530384606, 5.568575939816229, 0.374845466330721},
    {{2.034, 3.36, 3.225, 1.49, 1.702, 1.473, 2.57, 1.944, 2.747, 0.153, 3.567,
      1.904, 2.68, 1.863, 1.621, 2.463, 2.825, 1.797, 1.847, 2.686, 1.13, 0.486,
      2.395, 1.329, 0.08},
     {1.135, 1.758, 0.452, -0.086, 2.666, 4.215, 2.18, 1.262, 3.293, 3.891, 2.06,
      3.58, 4.477, 2.227, 1.136, 3.226, 3.046, 4.578, 0.288, 1.409, 1.091, -0.521,
      2.828, 3.55, 1.27, 5.094, 4.079, 3.729, 3.323, 4.32},
     -1.404072320283106, 24.39626687802288, 0.17290027873253858},
    {{4.457, 0.839, 1.367, 0.349, 0.26, 0.084, 1.303, 0.914, 0.749, 1.852, 0.134,
      0.449, 1.533, 2.879},
     {0.138, 4.865, 0.947, 0.019, 0.11, 0.201, 2.05, 1.453, 6.466, 0.341, 0.469,
      1.678},
     0.11837014927526657, 12.460701109928875, 0.9076612157502073},
};

}  // namespace stylobench::testing

#endif  // STYLOBENCH_TESTS_YUEN_FIXTURES_H_
