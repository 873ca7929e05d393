#include "attofocus/bessel.hpp"

#include <cmath>
#include <numbers>

namespace attofocus::special {

namespace {

// sum_k (-1)^k (x/2)^(2k) / (k! (k+1)!) = 2 J1(x)/x
double series_j1_over_half_x(double x) noexcept {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Miller backward recurrence, normalised by J0 + 2 sum J_2k = 1. x > 0.
double miller_j1(double x) noexcept {
  int start = static_cast<int>(x) + 30;
  if (start % 2 != 0) ++start;
  double jp1 = 0.0;
  double j = 1e-300;
  double norm = 0.0;
  double j1 = 0.0;
  for (int n = start; n > 0; --n) {
    const double jm1 = 2.0 * n / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (n - 1 == 1) j1 = j;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * j;
    if (std::fabs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      j1 *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += j;  // J0
  return j1 / norm;
}

// Hankel expansion for large x > 0.
double asymptotic_j1(double x) noexcept {
  constexpr double mu = 4.0;
  const double z = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (static_cast<double>(k) * z);
    if (std::fabs(next) > std::fabs(term)) break;
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (std::fabs(term) < 1e-17) break;
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) noexcept {
  const double ax = std::fabs(x);
  double v;
  if (ax < 8.0) {
    v = 0.5 * ax * series_j1_over_half_x(ax);
  } else if (ax < 25.0) {
    v = miller_j1(ax);
  } else {
    v = asymptotic_j1(ax);
  }
  return x < 0.0 ? -v : v;
}

double bessel_j1_over_x(double x) noexcept {
  const double ax = std::fabs(x);
  if (ax < 8.0) return 0.5 * series_j1_over_half_x(ax);
  return bessel_j1(ax) / ax;
}

}  // namespace attofocus::special
