#include "attofocus/simd/harmonic.hpp"

#include <cmath>

namespace attofocus::simd::scalar {

void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out) {
  const std::size_t nf = freq.size();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < nf; ++j) {
      const double ph = -freq[j] * t;
      const double c = std::cos(ph);
      const double s = std::sin(ph);
      re += amp[j].real() * c - amp[j].imag() * s;
      im += amp[j].real() * s + amp[j].imag() * c;
    }
    out[i] = {re, im};
  }
}

void analyze(std::span<const std::complex<double>> samples, double t0, double dt,
             std::span<const double> freq, std::span<std::complex<double>> out) {
  const std::size_t ns = samples.size();
  for (std::size_t k = 0; k < freq.size(); ++k) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < ns; ++i) {
      const double ph = freq[k] * (t0 + static_cast<double>(i) * dt);
      const double c = std::cos(ph);
      const double s = std::sin(ph);
      re += samples[i].real() * c - samples[i].imag() * s;
      im += samples[i].real() * s + samples[i].imag() * c;
    }
    out[k] = {re, im};
  }
}

}  // namespace attofocus::simd::scalar
