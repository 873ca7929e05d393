#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "attofocus/errors.hpp"
#include "attofocus/simd/harmonic.hpp"
#include "doctest.h"

namespace simd = attofocus::simd;
using cplx = std::complex<double>;

namespace {

double max_rel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / den;
}

struct Problem {
  std::vector<double> freq;
  std::vector<cplx> amp;
};

Problem random_problem(std::size_t nf, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Problem p;
  for (std::size_t j = 0; j < nf; ++j) {
    p.freq.push_back(50.0 * std::fabs(u(rng)));
    p.amp.emplace_back(u(rng), u(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("scalar synthesize matches direct evaluation") {
  const Problem p = random_problem(7, 1);
  std::vector<cplx> out(5);
  simd::scalar::synthesize(p.freq, p.amp, -0.3, 0.01, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    cplx ref = 0.0;
    const double t = -0.3 + 0.01 * static_cast<double>(i);
    for (std::size_t j = 0; j < p.freq.size(); ++j) ref += p.amp[j] * std::exp(cplx(0.0, -p.freq[j] * t));
    CHECK(std::abs(out[i] - ref) < 1e-13);
  }
}

TEST_CASE("analyze is the adjoint of synthesize") {
  // <a, S x> = <A a, x> with S = synthesize, A = analyze
  const Problem p = random_problem(13, 2);
  const std::size_t n = 37;
  std::vector<cplx> sx(n);
  simd::scalar::synthesize(p.freq, p.amp, 0.1, 0.02, sx);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> a(n);
  for (auto& v : a) v = {u(rng), u(rng)};
  std::vector<cplx> aa(p.freq.size());
  simd::scalar::analyze(a, 0.1, 0.02, p.freq, aa);
  cplx lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) lhs += std::conj(a[i]) * sx[i];
  for (std::size_t j = 0; j < p.freq.size(); ++j) rhs += std::conj(aa[j]) * p.amp[j];
  CHECK(std::abs(lhs - rhs) < 1e-11 * std::abs(lhs));
}

#if defined(ATTOFOCUS_HAVE_AVX2)
TEST_CASE("AVX2 kernels agree with scalar reference") {
  if (!simd::isa_supported(simd::Isa::avx2)) return;
  for (std::size_t nf : {1u, 3u, 4u, 5u, 8u, 31u, 257u}) {
    for (std::size_t n : {1u, 2u, 31u, 32u, 33u, 1000u}) {
      const Problem p = random_problem(nf, static_cast<unsigned>(nf * 1000 + n));
      std::vector<cplx> ref(n), vec(n);
      simd::scalar::synthesize(p.freq, p.amp, -2.0, 0.003, ref);
      simd::avx2::synthesize(p.freq, p.amp, -2.0, 0.003, vec);
      CHECK(max_rel(vec, ref) < 1e-12);

      std::vector<cplx> ra(nf), va(nf);
      simd::scalar::analyze(ref, -2.0, 0.003, p.freq, ra);
      simd::avx2::analyze(ref, -2.0, 0.003, p.freq, va);
      CHECK(max_rel(va, ra) < 1e-12);
    }
  }
}

TEST_CASE("dispatch honours the selected instruction set") {
  if (!simd::isa_supported(simd::Isa::avx2)) return;
  const simd::Isa before = simd::active_isa();
  const Problem p = random_problem(9, 11);
  std::vector<cplx> a(100), b(100);
  simd::set_active_isa(simd::Isa::scalar);
  simd::synthesize(p.freq, p.amp, 0.0, 0.01, a);
  simd::set_active_isa(simd::Isa::avx2);
  simd::synthesize(p.freq, p.amp, 0.0, 0.01, b);
  simd::set_active_isa(before);
  CHECK(max_rel(b, a) < 1e-12);
}
#endif

TEST_CASE("size mismatch is rejected") {
  std::vector<double> f(3, 1.0);
  std::vector<cplx> a(2), out(4);
  CHECK_THROWS_AS(simd::synthesize(f, a, 0.0, 1.0, out), attofocus::InvalidParameter);
  CHECK_THROWS_AS(simd::analyze(out, 0.0, 1.0, f, a), attofocus::InvalidParameter);
}

TEST_CASE("isa names") {
  CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
  CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
  CHECK(simd::isa_supported(simd::Isa::scalar));
}
