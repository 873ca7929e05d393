#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "attofocus/radial_curve.hpp"
#include "attofocus/spectrum.hpp"

namespace attofocus {

/// Reference sphere of radius f illuminated by a beam of waist sigma.
class FocusingGeometry {
 public:
  /// Warns when A = sigma/f exceeds 0.2.
  FocusingGeometry(double focal_length, double waist);

  double focal_length() const noexcept { return f_; }
  double waist() const noexcept { return sigma_; }
  double numerical_aperture() const noexcept { return sigma_ / f_; }

  /// f >= 50 mean wavelengths.
  bool far_field(const PulseSpectrum& s) const noexcept;
  /// Throws InvalidParameter unless far_field(s).
  void require_far_field(const PulseSpectrum& s) const;

 private:
  double f_;
  double sigma_;
};

/// Uniform grid t_i = start + i * step, i < count.
struct TimeGrid {
  double start = 0.0;
  double step = 0.0;
  std::size_t count = 0;
  double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
};

/// Largest time step the field synthesis accepts: 4x Nyquist margin on carrier + 6 widths.
double max_time_step(const PulseSpectrum& s);

/// Spectral field at (rho, z), V/m per sqrt(rad/s). Valid for any real omega.
std::complex<double> focal_field_spectral(const FocusingGeometry& g, const PulseSpectrum& s, double energy,
                                          double rho, double z, double omega);

/// Real focal-plane field E(rho, t) in V/m at lab time t.
double focal_field_time(const FocusingGeometry& g, const PulseSpectrum& s, double energy, double rho, double t);

/// E(rho, t) on a grid of lab times. Throws NumericalError if the step is too coarse.
std::vector<double> focal_field_trace(const FocusingGeometry& g, const PulseSpectrum& s, double energy, double rho,
                                      const TimeGrid& grid);

/// Rephasing time f/c.
double rephasing_time(const FocusingGeometry& g) noexcept;

/// Intensity at the rephasing time, arbitrary units (proportionality constant 1).
double focal_intensity_rephased(const FocusingGeometry& g, const PulseSpectrum& s, double rho);

/// 2 I(rho) / [I(0) + I(rho)].
double intensity_resolution(const FocusingGeometry& g, const PulseSpectrum& s, double rho);

/// Evaluates many radii with one spectral plan.
class IntensityProfile {
 public:
  IntensityProfile(const FocusingGeometry& g, const PulseSpectrum& s, double max_rho);
  double intensity(double rho) const;
  double resolution(double rho) const;
  double max_rho() const noexcept { return max_rho_; }

 private:
  double na_over_c_;
  double max_rho_;
  double i0_;
  std::vector<double> omega_;
  std::vector<double> amp_;  // weight * omega * Re(i phi) for the folded real field
};

/// n equally spaced radii on [0, max_rho].
std::vector<double> radial_grid(double max_rho, std::size_t n);

RadialCurve intensity_curve(const FocusingGeometry& g, const PulseSpectrum& s, std::span<const double> radii);
RadialCurve intensity_resolution_curve(const FocusingGeometry& g, const PulseSpectrum& s,
                                       std::span<const double> radii);

/// Smallest rho where the resolution drops to `threshold`, refined by bisection
/// on `resolution` between the bracketing samples (relative tolerance 1e-6 or
/// better). Returns 0 for threshold >= 1. Throws RangeError if the sampled
/// curve never reaches the threshold.
double spot_size(const RadialCurve& curve, const std::function<double(double)>& resolution,
                 double threshold = 0.5);

/// Same, bisecting on the linear interpolant of the samples.
double spot_size(const RadialCurve& curve, double threshold = 0.5);

/// Spot size of the intensity resolution on a default grid out to
/// `max_rho_over_scale` * mean wavelength / A.
double intensity_spot_size(const FocusingGeometry& g, const PulseSpectrum& s, double threshold = 0.5,
                           std::size_t points = 61, double max_rho_over_scale = 0.75);

}  // namespace attofocus
