#include <atomic>
#include <cstdlib>
#include <string>

#include "attofocus/errors.hpp"
#include "attofocus/simd/harmonic.hpp"

namespace attofocus::simd {

namespace {

Isa detect() noexcept {
#if defined(ATTOFOCUS_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa initial_isa() noexcept {
  const Isa best = detect();
  if (const char* env = std::getenv("ATTOFOCUS_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return best;
}

std::atomic<int>& current() {
  static std::atomic<int> isa{static_cast<int>(initial_isa())};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidParameter("harmonic kernel: frequency/amplitude length mismatch");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  if (isa == Isa::scalar) return true;
  return detect() == Isa::avx2;
}

Isa active_isa() noexcept { return static_cast<Isa>(current().load(std::memory_order_relaxed)); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw InvalidParameter("instruction set '" + std::string(isa_name(isa)) + "' not supported on this CPU");
  }
  current().store(static_cast<int>(isa), std::memory_order_relaxed);
}

void synthesize(std::span<const double> freq, std::span<const std::complex<double>> amp,
                double t0, double dt, std::span<std::complex<double>> out) {
  check_sizes(freq.size(), amp.size());
#if defined(ATTOFOCUS_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::synthesize(freq, amp, t0, dt, out);
#endif
  scalar::synthesize(freq, amp, t0, dt, out);
}

void analyze(std::span<const std::complex<double>> samples, double t0, double dt,
             std::span<const double> freq, std::span<std::complex<double>> out) {
  check_sizes(freq.size(), out.size());
#if defined(ATTOFOCUS_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::analyze(samples, t0, dt, freq, out);
#endif
  scalar::analyze(samples, t0, dt, freq, out);
}

}  // namespace attofocus::simd
