#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "attofocus/constants.hpp"
#include "attofocus/diagnostics.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/focal.hpp"
#include "attofocus/simd/harmonic.hpp"
#include "doctest.h"

using namespace attofocus;
using constants::speed_of_light;

namespace {

constexpr double kCarrier = constants::two_pi * speed_of_light / 719e-9;
constexpr double kEnergy = 1e-12;

PulseSpectrum broad() { return PulseSpectrum::gaussian(kCarrier, 10.0 * kCarrier); }
PulseSpectrum narrow() { return PulseSpectrum::gaussian(kCarrier, 0.01 * kCarrier); }

// small focal length keeps the e^{i w f/c} phase moderate
FocusingGeometry short_lens() { return FocusingGeometry(10e-6, 1e-6); }

double j1_series(double x) {
  long double sum = 0.0L, term = x / 2.0L;
  for (int k = 0; k < 80; ++k) {
    sum += term;
    term *= -(static_cast<long double>(x) * x / 4.0L) / ((k + 1.0L) * (k + 2.0L));
  }
  return static_cast<double>(sum);
}

// Monochromatic Airy resolution 2I/(I0+I) = 1/2 means (2 J1(x)/x)^2 = 1/3.
double airy_half_resolution_argument() {
  double a = 0.5, b = 3.8;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double v = 2.0 * std::cyl_bessel_j(1.0, m) / m;
    (v * v > 1.0 / 3.0 ? a : b) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("spectral field on axis and at small radius") {
  const auto g = short_lens();
  const auto s = broad();
  const double w = s.mean_frequency();
  const auto e0 = focal_field_spectral(g, s, kEnergy, 0.0, 0.0, w);
  const auto e1 = focal_field_spectral(g, s, kEnergy, 1e-9 * s.mean_wavelength(), 0.0, w);
  CHECK(std::abs(e1 - e0) < 1e-6 * std::abs(e0));
  const double na_c = g.numerical_aperture() / speed_of_light;
  const double pre = std::sqrt(2.0 * kEnergy / (constants::vacuum_permittivity * speed_of_light));
  CHECK(std::abs(e0) == doctest::Approx(pre * std::abs(s.value(w)) * na_c * w / 2.0).epsilon(1e-13));
}

TEST_CASE("spectral field matches a series Bessel oracle at rho = mean wavelength / A") {
  const auto g = short_lens();
  const auto s = broad();
  const double na_c = g.numerical_aperture() / speed_of_light;
  const double rho = s.mean_wavelength() / g.numerical_aperture();
  const double pre = std::sqrt(2.0 * kEnergy / (constants::vacuum_permittivity * speed_of_light));
  for (double w : {0.5 * s.mean_frequency(), s.mean_frequency(), 2.0 * s.mean_frequency()}) {
    const double x = na_c * w * rho;
    const std::complex<double> oracle = std::complex<double>(0.0, 1.0) *
                                        std::polar(1.0, w * g.focal_length() / speed_of_light) * pre * s.value(w) *
                                        (na_c * w) * (j1_series(x) / x);
    CHECK(std::abs(focal_field_spectral(g, s, kEnergy, rho, 0.0, w) - oracle) < 1e-8 * std::abs(oracle));
  }
}

TEST_CASE("monochromatic spectral field vanishes at the first Bessel zero") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = narrow();
  const double w = kCarrier;
  const double rho = 3.8317059702075123 * speed_of_light / (g.numerical_aperture() * w);
  const double on_axis = std::abs(focal_field_spectral(g, s, kEnergy, 0.0, 0.0, w));
  CHECK(std::abs(focal_field_spectral(g, s, kEnergy, rho, 0.0, w)) < 1e-12 * on_axis);
}

TEST_CASE("time field equals the unfolded inverse transform, which is real") {
  const auto g = short_lens();
  const auto s = broad();
  const double rho = 0.2 * s.mean_wavelength() / g.numerical_aperture();
  const double wmax = s.carrier_frequency() + 13.0 * s.spectral_width();
  const int n = 60000;
  const double h = wmax / n;
  std::vector<std::complex<double>> ep(n + 1), em(n + 1);
  for (int k = 0; k <= n; ++k) {
    ep[k] = focal_field_spectral(g, s, kEnergy, rho, 0.0, k * h);
    em[k] = focal_field_spectral(g, s, kEnergy, rho, 0.0, -k * h);
    CHECK(std::abs(em[k] - std::conj(ep[k])) <= 1e-14 * std::abs(ep[k]) + 1e-300);
  }
  const double t0 = rephasing_time(g);
  const double peak = focal_field_time(g, s, kEnergy, rho, t0);
  for (double tau : {-0.7, -0.2, 0.0, 0.13, 0.5, 1.1}) {
    const double t = t0 + tau / s.spectral_width();
    std::complex<double> sum = 0.0;
    for (int k = -n; k <= n; ++k) {
      const auto e = k >= 0 ? ep[k] : em[-k];
      const double wt = (k == -n || k == n) ? 0.5 : 1.0;
      sum += wt * e * std::polar(1.0, -k * h * t);
    }
    sum *= h / constants::two_pi;
    CHECK(std::fabs(sum.imag()) < 1e-10 * std::fabs(peak));
    CHECK(std::fabs(sum.real() - focal_field_time(g, s, kEnergy, rho, t)) < 1e-8 * std::fabs(peak));
  }
}

TEST_CASE("on-axis field peaks at the rephasing time") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = broad();
  const double step = max_time_step(s);
  const std::size_t n = 801;
  const TimeGrid grid{rephasing_time(g) - 400 * step, step, n};
  const auto e = focal_field_trace(g, s, kEnergy, 0.0, grid);
  std::size_t imax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(e[i]) > std::fabs(e[imax])) imax = i;
  }
  CHECK(std::fabs(grid.at(imax) - rephasing_time(g)) <= step);
  CHECK(e[imax] > 0.0);
}

TEST_CASE("trace agrees with pointwise evaluation on every ISA") {
  const auto g = short_lens();
  const auto s = broad();
  const double rho = 0.1 * s.mean_wavelength() / g.numerical_aperture();
  const double step = max_time_step(s);
  const TimeGrid grid{rephasing_time(g) - 150 * step, step, 301};
  const simd::Isa saved = simd::active_isa();
  for (simd::Isa isa : {simd::Isa::scalar, simd::Isa::avx2}) {
    if (!simd::isa_supported(isa)) continue;
    simd::set_active_isa(isa);
    const auto e = focal_field_trace(g, s, kEnergy, rho, grid);
    double peak = 0.0;
    for (double v : e) peak = std::max(peak, std::fabs(v));
    for (std::size_t i = 0; i < grid.count; i += 37) {
      CHECK(std::fabs(e[i] - focal_field_time(g, s, kEnergy, rho, grid.at(i))) < 1e-10 * peak);
    }
  }
  simd::set_active_isa(saved);
}

TEST_CASE("Parseval: time-domain energy density equals the spectral one") {
  const auto g = short_lens();
  const auto s = broad();
  const double rho = 0.15 * s.mean_wavelength() / g.numerical_aperture();
  const double step = 0.5 * max_time_step(s);
  const double half = 40.0 / s.spectral_width();
  const std::size_t n = static_cast<std::size_t>(2.0 * half / step) + 1;
  const auto e = focal_field_trace(g, s, kEnergy, rho, TimeGrid{rephasing_time(g) - half, step, n});
  double time_side = 0.0;
  for (double v : e) time_side += v * v;
  time_side *= step;

  const double wmax = s.carrier_frequency() + 13.0 * s.spectral_width();
  const int m = 200000;
  const double h = wmax / m;
  double freq_side = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double wt = (k == 0 || k == m) ? 0.5 : 1.0;
    freq_side += wt * std::norm(focal_field_spectral(g, s, kEnergy, rho, 0.0, k * h));
  }
  freq_side *= h / constants::pi;
  CHECK(time_side == doctest::Approx(freq_side).epsilon(1e-6));
}

TEST_CASE("rephased intensity against a brute-force radial oracle") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = broad();
  const double na_c = g.numerical_aperture() / speed_of_light;
  const double scale = s.mean_wavelength() / g.numerical_aperture();
  const IntensityProfile prof(g, s, scale);
  const double wmax = s.carrier_frequency() + 13.0 * s.spectral_width();
  const int m = 40000;
  const double h = wmax / m;
  auto oracle = [&](double rho) {
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double w = k * h;
      const double wt = k == m ? 0.5 : 1.0;
      const double x = na_c * w * rho;
      const double j1ox = x == 0.0 ? 0.5 : std::cyl_bessel_j(1.0, x) / x;
      sum += wt * (std::complex<double>(0.0, 1.0) * s.value(w)).real() * na_c * w * j1ox;
    }
    return sum * h * sum * h;
  };
  const double i0 = oracle(0.0);
  for (int i = 0; i < 20; ++i) {
    const double rho = scale * i / 19.0;
    const double v = prof.intensity(rho);
    CHECK(v >= 0.0);
    CHECK(std::fabs(v - oracle(rho)) < 1e-4 * i0);
    CHECK(focal_intensity_rephased(g, s, rho) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("narrowband intensity reduces to the Airy pattern") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = narrow();
  const double lambda = constants::two_pi * speed_of_light / kCarrier;
  const double na_c = g.numerical_aperture() / speed_of_light;
  const IntensityProfile prof(g, s, 0.5 * lambda / g.numerical_aperture());
  for (int i = 1; i <= 25; ++i) {
    const double rho = 0.5 * lambda / g.numerical_aperture() * i / 25.0;
    const double x = na_c * kCarrier * rho;
    const double airy = std::pow(2.0 * std::cyl_bessel_j(1.0, x) / x, 2);
    CHECK(std::fabs(prof.intensity(rho) / prof.intensity(0.0) - airy) < 0.01);
  }
  const double dr = intensity_spot_size(g, s);
  CHECK(dr * g.numerical_aperture() / lambda ==
        doctest::Approx(airy_half_resolution_argument() / constants::two_pi).epsilon(1e-3));
}

TEST_CASE("intensity resolution is bounded and normalised") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = broad();
  const auto radii = radial_grid(2.0 * s.mean_wavelength() / g.numerical_aperture(), 81);
  const RadialCurve c = intensity_resolution_curve(g, s, radii);
  CHECK(c.values().front() == 1.0);
  CHECK(intensity_resolution(g, s, 0.0) == 1.0);
  for (double v : c.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
  CHECK(intensity_resolution(g, s, radii[10]) == doctest::Approx(c.values()[10]).epsilon(1e-12));
}

TEST_CASE("spot size scaling") {
  const auto s = broad();
  const FocusingGeometry g1(1e-3, 0.5e-4), g2(1e-3, 1e-4);
  const double d1 = intensity_spot_size(g1, s);
  const double d2 = intensity_spot_size(g2, s);
  CHECK(d1 / d2 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(intensity_spot_size(g2, s, 1.0) == 0.0);

  // (A, rho) and (2A, rho/2) give the same resolution
  for (double rho : {3e-8, 1e-7, 2.2e-7}) {
    CHECK(std::fabs(intensity_resolution(g1, s, rho) - intensity_resolution(g2, s, rho / 2.0)) < 1e-9);
  }
  const FocusingGeometry g15(1e-3, 1.5e-4);
  for (double rho : {3e-8, 1e-7, 2.2e-7}) {
    CHECK(std::fabs(intensity_resolution(g1, s, rho) - intensity_resolution(g15, s, rho / 3.0)) < 1e-9);
  }
  // doubling every frequency and halving every length
  const auto s2 = PulseSpectrum::gaussian(2.0 * kCarrier, 20.0 * kCarrier);
  const FocusingGeometry g3(0.5e-3, 0.5e-4);
  for (double rho : {3e-8, 1e-7, 2.2e-7}) {
    CHECK(std::fabs(intensity_resolution(g2, s, rho) - intensity_resolution(g3, s2, rho / 2.0)) < 1e-9);
  }
}

TEST_CASE("spot size on sampled curves") {
  const RadialCurve c(CurveKind::resolution, {0.0, 1.0, 2.0}, {1.0, 0.8, 0.4});
  CHECK(spot_size(c) == doctest::Approx(1.75).epsilon(1e-10));
  CHECK(spot_size(c, 1.0) == 0.0);
  CHECK_THROWS_AS(spot_size(c, 0.1), RangeError);
  const RadialCurve notres(CurveKind::intensity, {0.0, 1.0}, {1.0, 0.2});
  CHECK_THROWS_AS(spot_size(notres), InvalidParameter);
}

TEST_CASE("parameter validation") {
  const auto g = FocusingGeometry(1e-3, 1e-4);
  const auto s = broad();
  CHECK_THROWS_AS(focal_field_spectral(g, s, kEnergy, -1e-9, 0.0, kCarrier), InvalidParameter);
  CHECK_THROWS_AS(focal_field_time(g, s, -1.0, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(focal_intensity_rephased(g, s, -1.0), InvalidParameter);
  CHECK_THROWS_AS(FocusingGeometry(0.0, 1e-4), InvalidParameter);
  const TimeGrid coarse{0.0, 2.0 * max_time_step(s), 10};
  CHECK_THROWS_AS(focal_field_trace(g, s, kEnergy, 0.0, coarse), NumericalError);
  const FocusingGeometry tiny(1e-7, 1e-8);
  CHECK(!tiny.far_field(s));
  CHECK_THROWS_AS(focal_field_spectral(tiny, s, kEnergy, 0.0, 0.0, kCarrier), InvalidParameter);
  const IntensityProfile prof(g, s, 1e-7);
  CHECK_THROWS_AS(prof.intensity(2e-7), RangeError);
}

TEST_CASE("wide apertures warn") {
  std::vector<std::string> seen;
  auto old = set_warning_sink([&](const std::string& m) { seen.push_back(m); });
  FocusingGeometry ok(1e-3, 1e-4);
  CHECK(seen.empty());
  FocusingGeometry wide(1e-3, 3e-4);
  CHECK(seen.size() == 1);
  set_warning_sink(old);
}
