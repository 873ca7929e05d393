#pragma once

namespace attofocus::special {

/// Bessel function of the first kind, order one. Absolute error below 1e-13.
double bessel_j1(double x) noexcept;

/// J1(x)/x, continuous at x = 0 where it equals 1/2.
double bessel_j1_over_x(double x) noexcept;

}  // namespace attofocus::special
