// Compiled with -mavx2 -mfma; only called after a runtime CPU check.

#include "attofocus/simd/harmonic.hpp"

#include <immintrin.h>

#include <cmath>
#include <vector>

namespace attofocus::simd::avx2 {

namespace {

struct Phase4 {
  __m256d re;
  __m256d im;
};

// exp(i * sign * w[l] * t) for four lanes, from libm.
inline Phase4 exact_phase(const double* w, double sign, double t) {
  alignas(32) double re[4];
  alignas(32) double im[4];
  for (int l = 0; l < 4; ++l) {
    const double ph = sign * w[l] * t;
    re[l] = std::cos(ph);
    im[l] = std::sin(ph);
  }
  return {_mm256_load_pd(re), _mm256_load_pd(im)};
}

inline Phase4 mul(const Phase4& a, const Phase4& b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out) {
  const std::size_t n = out.size();
  const std::size_t nf = freq.size();
  const std::size_t nf4 = nf - nf % 4;

  // Per-sample lane accumulators: [re0..re3, im0..im3] for each output index.
  std::vector<double> acc(8 * n, 0.0);

  for (std::size_t j = 0; j < nf4; j += 4) {
    alignas(32) double are[4], aim[4];
    for (int l = 0; l < 4; ++l) {
      are[l] = amp[j + l].real();
      aim[l] = amp[j + l].imag();
    }
    const __m256d a_re = _mm256_load_pd(are);
    const __m256d a_im = _mm256_load_pd(aim);
    const Phase4 step = exact_phase(&freq[j], -1.0, dt);
    Phase4 z{};
    for (std::size_t i = 0; i < n; ++i) {
      if (i % kReseedInterval == 0) z = exact_phase(&freq[j], -1.0, t0 + static_cast<double>(i) * dt);
      double* slot = acc.data() + 8 * i;
      _mm256_storeu_pd(slot, _mm256_add_pd(_mm256_loadu_pd(slot), _mm256_fmsub_pd(a_re, z.re, _mm256_mul_pd(a_im, z.im))));
      _mm256_storeu_pd(slot + 4,
                       _mm256_add_pd(_mm256_loadu_pd(slot + 4), _mm256_fmadd_pd(a_re, z.im, _mm256_mul_pd(a_im, z.re))));
      z = mul(z, step);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    double re = hsum(_mm256_loadu_pd(acc.data() + 8 * i));
    double im = hsum(_mm256_loadu_pd(acc.data() + 8 * i + 4));
    const double t = t0 + static_cast<double>(i) * dt;
    for (std::size_t j = nf4; j < nf; ++j) {
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
  const std::size_t nf = freq.size();
  const std::size_t nf4 = nf - nf % 4;
  const double* s = reinterpret_cast<const double*>(samples.data());

  for (std::size_t k = 0; k < nf4; k += 4) {
    const Phase4 step = exact_phase(&freq[k], 1.0, dt);
    Phase4 z{};
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t i = 0; i < ns; ++i) {
      if (i % kReseedInterval == 0) z = exact_phase(&freq[k], 1.0, t0 + static_cast<double>(i) * dt);
      const __m256d s_re = _mm256_broadcast_sd(s + 2 * i);
      const __m256d s_im = _mm256_broadcast_sd(s + 2 * i + 1);
      acc_re = _mm256_add_pd(acc_re, _mm256_fmsub_pd(s_re, z.re, _mm256_mul_pd(s_im, z.im)));
      acc_im = _mm256_add_pd(acc_im, _mm256_fmadd_pd(s_re, z.im, _mm256_mul_pd(s_im, z.re)));
      z = mul(z, step);
    }
    alignas(32) double re[4], im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    for (int l = 0; l < 4; ++l) out[k + l] = {re[l], im[l]};
  }

  if (nf4 < nf) {
    scalar::analyze(samples, t0, dt, freq.subspan(nf4), out.subspan(nf4));
  }
}

}  // namespace attofocus::simd::avx2
