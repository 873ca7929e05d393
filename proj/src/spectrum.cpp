#include "attofocus/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/quadrature.hpp"

namespace attofocus {

namespace {

constexpr double kTailWidths = 12.0;  // exp(-144/2) on |phi|^2 beyond this
constexpr int kOrder = 16;

// l(-w) - l(w) without cancellation near w = 0.
double gaussian_difference(double w, double carrier, double width) {
  const double s = 4.0 * width * width;
  const double arg = w * carrier / (2.0 * width * width);
  if (std::fabs(arg) < 1.0) {
    return 2.0 * std::exp(-(w * w + carrier * carrier) / s) * std::sinh(arg);
  }
  const double a = (w - carrier) * (w - carrier) / s;
  const double b = (w + carrier) * (w + carrier) / s;
  return std::exp(-a) - std::exp(-b);
}

}  // namespace

PulseSpectrum PulseSpectrum::gaussian(double carrier, double width) {
  if (!(carrier > 0.0) || !std::isfinite(carrier)) throw InvalidParameter("carrier frequency must be positive");
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidParameter("spectral width must be positive");
  PulseSpectrum s;
  s.gaussian_ = true;
  s.carrier_ = carrier;
  s.width_ = width;
  s.lo_ = std::max(0.0, carrier - kTailWidths * width);
  s.hi_ = carrier + kTailWidths * width;
  s.finish();
  return s;
}

PulseSpectrum PulseSpectrum::custom(Shape shape, double support_min, double support_max, double carrier,
                                    double width) {
  if (!shape) throw InvalidParameter("custom spectrum needs a shape function");
  if (!(support_min >= 0.0) || !(support_max > support_min)) {
    throw InvalidParameter("custom spectrum support must satisfy 0 <= min < max");
  }
  if (!(width > 0.0)) throw InvalidParameter("spectral width must be positive");
  if (!(carrier >= 0.0)) throw InvalidParameter("carrier frequency must be non-negative");
  PulseSpectrum s;
  s.shape_ = std::move(shape);
  s.carrier_ = carrier;
  s.width_ = width;
  s.lo_ = support_min;
  s.hi_ = support_max;
  if (std::abs(s.shape_(0.0)) != 0.0 && support_min == 0.0) {
    throw InvalidParameter("custom spectrum must vanish at zero frequency");
  }
  s.finish();
  return s;
}

void PulseSpectrum::finish() {
  norm_ = 1.0;
  const double n2 = moment(0);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw NumericalError("spectrum has zero or non-finite norm");
  norm_ = 1.0 / std::sqrt(n2);
  mean_ = moment(1);
  if (!(mean_ > 0.0)) throw NumericalError("mean frequency is not positive");
}

std::complex<double> PulseSpectrum::raw(double w) const {
  if (gaussian_) return {0.0, -gaussian_difference(w, carrier_, width_)};
  if (w < lo_ || w > hi_) return {0.0, 0.0};
  return shape_(w);
}

std::complex<double> PulseSpectrum::value(double omega) const {
  if (omega == 0.0) return {0.0, 0.0};
  if (omega < 0.0) return std::conj(norm_ * raw(-omega));
  return norm_ * raw(omega);
}

double PulseSpectrum::mean_wavelength() const noexcept {
  return constants::two_pi * constants::speed_of_light / mean_;
}

SpectralSamples PulseSpectrum::samples(double max_time, int refinement) const {
  if (refinement < 1) throw InvalidParameter("refinement must be >= 1");
  double h = 0.5 * width_;
  if (max_time > 0.0) h = std::min(h, 6.0 / max_time);
  const quad::Rule rule = quad::panel_rule(lo_, hi_, h / refinement, kOrder);
  SpectralSamples out;
  out.omega = rule.nodes;
  out.weight = rule.weights;
  out.phi.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) out.phi[i] = value(rule.nodes[i]);
  return out;
}

double PulseSpectrum::moment(int power, int refinement) const {
  auto integrate = [&](int refine) {
    const quad::Rule rule = quad::panel_rule(lo_, hi_, 0.5 * width_ / refine, kOrder);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double w = rule.nodes[i];
      sum += rule.weights[i] * std::pow(w, power) * std::norm(value(w));
    }
    return sum;
  };
  const double coarse = integrate(refinement);
  const double fine = integrate(2 * refinement);
  const double change = std::fabs(fine - coarse) / std::max(std::fabs(fine), 1e-300);
  if (!std::isfinite(fine) || change > 1e-12) {
    std::ostringstream os;
    os << "spectral moment " << power << " did not converge: relative change " << change
       << " on panel halving (width " << width_ << ", support [" << lo_ << ", " << hi_ << "])";
    throw NumericalError(os.str());
  }
  return fine;
}

PulseSpectrum make_gaussian_spectrum(double carrier, double width) { return PulseSpectrum::gaussian(carrier, width); }

std::complex<double> spectrum_value(const PulseSpectrum& s, double omega) { return s.value(omega); }

double mean_frequency(const PulseSpectrum& s) { return s.moment(1); }

}  // namespace attofocus
