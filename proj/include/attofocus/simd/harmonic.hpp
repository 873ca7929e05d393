#pragma once

// Trigonometric sums evaluated on uniform grids.
//
// Two transposed kernels cover every oscillatory integral in the library:
//
//   synthesize:  out[i] = sum_j amp[j] * exp(-i freq[j] * (t0 + i*dt))
//   analyze:     out[k] = sum_i samples[i] * exp(+i freq[k] * (t0 + i*dt))
//
// Quadrature weights are folded into amp/samples by the caller. The scalar
// variants evaluate every phase with std::cos/std::sin and are the reference;
// the AVX2 variants advance phases by complex rotation and re-seed them from
// exact values every `kReseedInterval` steps.

#include <complex>
#include <span>
#include <string_view>

namespace attofocus::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Compiled in and supported by the running CPU.
bool isa_supported(Isa isa) noexcept;

/// Best supported ISA, unless ATTOFOCUS_ISA=scalar|avx2 says otherwise.
Isa active_isa() noexcept;

/// Throws InvalidParameter if `isa` is not supported.
void set_active_isa(Isa isa);

inline constexpr int kReseedInterval = 32;

void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out);

void analyze(std::span<const std::complex<double>> samples, double t0, double dt,
             std::span<const double> freq, std::span<std::complex<double>> out);

namespace scalar {
void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out);
void analyze(std::span<const std::complex<double>> samples, double t0, double dt,
             std::span<const double> freq, std::span<std::complex<double>> out);
}  // namespace scalar

#if defined(ATTOFOCUS_HAVE_AVX2)
namespace avx2 {
void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out);
void analyze(std::span<const std::complex<double>> samples, double t0, double dt,
             std::span<const double> freq, std::span<std::complex<double>> out);
}  // namespace avx2
#endif

}  // namespace attofocus::simd
