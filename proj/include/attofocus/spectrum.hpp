#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace attofocus {

/// Spectral quadrature over the positive-frequency support: nodes (rad/s),
/// weights (rad/s) and phi(omega) at each node (s^1/2).
struct SpectralSamples {
  std::vector<double> omega;
  std::vector<double> weight;
  std::vector<std::complex<double>> phi;
  std::size_t size() const noexcept { return omega.size(); }
};

/// Normalised spectral amplitude phi(omega) of a pulse. Immutable.
///
/// Only omega >= 0 is stored; negative frequencies follow from
/// phi(-omega) = conj(phi(omega)).
class PulseSpectrum {
 public:
  /// Unnormalised amplitude for omega >= 0.
  using Shape = std::function<std::complex<double>(double omega)>;

  /// phi = i N [l(omega) - l(-omega)], l(omega) = exp[-(omega + carrier)^2 / (4 width^2)].
  static PulseSpectrum gaussian(double carrier, double width);

  /// Arbitrary shape supported on [support_min, support_max] (rad/s, >= 0).
  /// `width` sets the quadrature panel scale. The shape must vanish at 0.
  static PulseSpectrum custom(Shape shape, double support_min, double support_max, double carrier,
                              double width);

  double carrier_frequency() const noexcept { return carrier_; }
  double spectral_width() const noexcept { return width_; }
  double normalization() const noexcept { return norm_; }
  double mean_frequency() const noexcept { return mean_; }
  double mean_wavelength() const noexcept;
  double support_min() const noexcept { return lo_; }
  double support_max() const noexcept { return hi_; }
  bool is_gaussian() const noexcept { return gaussian_; }

  /// phi(omega) for any real omega.
  std::complex<double> value(double omega) const;

  /// Quadrature for integrals of phi(omega) e^{-i omega t} with |t| <= max_time.
  /// `refinement` multiplies the panel count.
  SpectralSamples samples(double max_time = 0.0, int refinement = 1) const;

  /// Integral over omega > 0 of omega^power |phi|^2. Throws NumericalError if
  /// halving the panel width changes the value by more than 1e-12 relative.
  double moment(int power, int refinement = 1) const;

 private:
  PulseSpectrum() = default;
  std::complex<double> raw(double omega) const;
  void finish();

  Shape shape_;
  bool gaussian_ = false;
  double carrier_ = 0.0;
  double width_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double norm_ = 1.0;
  double mean_ = 0.0;
};

PulseSpectrum make_gaussian_spectrum(double carrier, double width);
std::complex<double> spectrum_value(const PulseSpectrum& s, double omega);
/// Recomputes the first moment by quadrature.
double mean_frequency(const PulseSpectrum& s);

}  // namespace attofocus
