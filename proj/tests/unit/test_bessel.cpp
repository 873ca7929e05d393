#include <cmath>

#include "attofocus/bessel.hpp"
#include "doctest.h"

#if defined(ATTOFOCUS_TEST_HAVE_BOOST)
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

using attofocus::special::bessel_j1;
using attofocus::special::bessel_j1_over_x;

namespace {

#if defined(ATTOFOCUS_TEST_HAVE_BOOST)
// 50-digit power series; converges for any x at this precision budget up to ~40.
double j1_multiprecision(double xd) {
  using mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;
  const mp x = xd;
  const mp q = -(x * x) / 4;
  mp term = x / 2;
  mp sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (mp(k) * mp(k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}
#endif

}  // namespace

TEST_CASE("J1 against std::cyl_bessel_j across all branches") {
  double worst = 0.0;
  for (double x = 0.0; x < 200.0; x += 0.0137) {
    worst = std::max(worst, std::fabs(bessel_j1(x) - std::cyl_bessel_j(1.0, x)));
  }
  CHECK(worst < 1e-13);
}

#if defined(ATTOFOCUS_TEST_HAVE_BOOST)
TEST_CASE("J1 against a multiprecision series") {
  double worst = 0.0;
  for (double x = 0.05; x < 40.0; x += 0.173) worst = std::max(worst, std::fabs(bessel_j1(x) - j1_multiprecision(x)));
  CHECK(worst < 1e-13);
}
#endif

TEST_CASE("J1 is odd and J1(x)/x is even with limit 1/2") {
  for (double x : {0.3, 7.9, 8.1, 24.9, 25.1, 60.0}) {
    CHECK(bessel_j1(-x) == -bessel_j1(x));
    CHECK(bessel_j1_over_x(-x) == bessel_j1_over_x(x));
  }
  CHECK(bessel_j1_over_x(0.0) == 0.5);
  CHECK(bessel_j1_over_x(1e-9) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("first zero of J1") {
  constexpr double j11 = 3.8317059702075123;
  CHECK(std::fabs(bessel_j1(j11)) < 1e-15);
}

TEST_CASE("branch boundaries are continuous") {
  for (double x : {8.0, 25.0}) {
    for (double y : {x * (1 - 1e-12), x, x * (1 + 1e-12)}) {
      CHECK(std::fabs(bessel_j1(y) - std::cyl_bessel_j(1.0, y)) < 1e-13);
    }
  }
}
