#include <cmath>
#include <complex>
#include <vector>

#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/oracle.hpp"
#include "doctest.h"

using namespace attofocus;
using cplx = std::complex<double>;

namespace {

const double kOmega0 = constants::two_pi * constants::speed_of_light / 719e-9;
const double kGamma0 = 1.0 / 1.6e-9;

TwoLevelSystem tls() { return TwoLevelSystem(kOmega0, kGamma0); }
FocusingGeometry lens() { return FocusingGeometry(1e-3, 1e-4); }

double energy_for_eta(const PulseSpectrum& s, double target) {
  const double ref = eta(lens(), s, 1e-12, tls());
  return 1e-12 * (target / ref) * (target / ref);
}

PropagatorHistory single_pulse(double ratio, double target_eta, double grid_scale = 1.0, double sign = 1.0) {
  const PulseSpectrum s = PulseSpectrum::gaussian(kOmega0, ratio * kOmega0);
  const PulseArea area(lens(), s, energy_for_eta(s, target_eta), tls(), 0.0, sign);
  return propagate_driven_tls(train_drive(area, s, tls(), 1, 0.0, grid_scale), kOmega0);
}

// <e|U|g> in the interaction picture, independent of where the grid ends.
cplx interaction_c0(const PropagatorHistory& h) {
  const double t_end = h.grid().at(h.size() - 1);
  return std::polar(1.0, kOmega0 * t_end) * oracle_c0(h);
}

}  // namespace

TEST_CASE("free evolution") {
  const TimeGrid grid{-1e-15, 1e-18, 2001};
  const auto h = propagate_driven_tls([](double) { return 0.0; }, kOmega0, grid);
  for (std::size_t i = 0; i < h.size(); i += 50) {
    const double t = grid.at(i) - grid.start;
    CHECK(std::abs(h.at(i)(0, 0) - std::polar(1.0, -kOmega0 * t)) < 1e-10);
    CHECK(std::abs(h.at(i)(1, 1) - 1.0) < 1e-10);
    CHECK(std::abs(h.at(i)(0, 1)) < 1e-15);
  }
  CHECK(oracle_c0(h) == cplx(0.0, 0.0));
  CHECK(max_excited_population(h) == 0.0);
  CHECK(h.frequency_unit() == kOmega0);
}

TEST_CASE("resonant Rabi flopping without level splitting") {
  const double rabi = 3e14;
  const TimeGrid grid{0.0, 1e-17, 4001};
  const auto h = propagate_driven_tls([&](double) { return rabi; }, 0.0, grid);
  CHECK(h.frequency_unit() == doctest::Approx(1.0 / grid.step));
  for (std::size_t i = 0; i < h.size(); i += 100) {
    const double t = grid.at(i);
    CHECK(std::abs(h.at(i)(0, 1) - cplx(0.0, -std::sin(rabi * t))) < 1e-8);
    CHECK(std::fabs(std::norm(h.at(i)(0, 1)) - std::pow(std::sin(rabi * t), 2)) < 1e-8);
  }
}

TEST_CASE("step halving changes the worked-scenario amplitude by < 1e-8") {
  // 0.7 nJ with carrier = transition, 38 as width. Also the eta = 0.5 pulse.
  const PulseSpectrum s = PulseSpectrum::gaussian(kOmega0, 1.0 / 38e-18);
  for (double energy : {0.7e-9, energy_for_eta(s, 0.5)}) {
    const PulseArea area(lens(), s, energy, tls(), 0.0);
    const auto h1 = propagate_driven_tls(train_drive(area, s, tls(), 1, 0.0, 1.0), kOmega0);
    const auto h2 = propagate_driven_tls(train_drive(area, s, tls(), 1, 0.0, 2.0), kOmega0);
    CHECK(std::abs(interaction_c0(h1) - interaction_c0(h2)) < 1e-8);
    CHECK(h1.max_unitarity_error() < 1e-10);
  }
}

TEST_CASE("composition U(t2,t0) = U(t2,t1) U(t1,t0)") {
  const PulseSpectrum s = PulseSpectrum::gaussian(kOmega0, 10.0 * kOmega0);
  const PulseArea area(lens(), s, energy_for_eta(s, 0.5), tls(), 0.0);
  const TimeGrid full{-area.half_window(), area_time_step(s, tls()), 1201};
  auto drive = [&](double t) { return area.rabi(t); };
  const auto h = propagate_driven_tls(drive, kOmega0, full);
  const std::size_t i1 = 500, i2 = 1100;
  const TimeGrid tail{full.at(i1), full.step, i2 - i1 + 1};
  const auto sub = propagate_driven_tls(drive, kOmega0, tail);
  const Mat2 direct = sub.final();
  const Mat2 via = h.between(i2, i1);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(direct.m[k] - via.m[k]) < 1e-8);
  CHECK(h.max_unitarity_error() < 1e-10);
}

TEST_CASE("drive validation") {
  DriveSamples d;
  d.grid = TimeGrid{0.0, 1e-18, 10};
  d.stage1.assign(3, 0.0);
  d.stage2.assign(3, 0.0);
  CHECK_THROWS_AS(propagate_driven_tls(d, kOmega0), InvalidParameter);
  CHECK_THROWS_AS(propagate_driven_tls([](double) { return 0.0; }, kOmega0, TimeGrid{0.0, 1e-18, 1}),
                  InvalidParameter);
  CHECK_THROWS_AS(propagate_driven_tls([](double) { return std::nan(""); }, kOmega0, TimeGrid{0.0, 1e-18, 600}),
                  NumericalError);
}

TEST_CASE("no drive, no emission") {
  const TimeGrid grid{-1e-15, 1e-18, 2001};
  const auto h = propagate_driven_tls([](double) { return 0.0; }, kOmega0, grid);
  const std::vector<double> w{0.5 * kOmega0, 3.0 * kOmega0, 20.0 * kOmega0};
  for (const cplx& m : emission_amplitudes(h, w)) CHECK(m == cplx(0.0, 0.0));
  for (double wk : w) CHECK(std::abs(oracle_emission_amplitude(h, wk)) * wk < 1e-12);
  CHECK(oracle_excitation_probability(h, tls()).p_e == 0.0);
}

TEST_CASE("literal emission amplitude agrees with the lowering-operator form") {
  const auto h = single_pulse(10.0, 0.05);
  std::vector<double> w;
  for (double y : {0.5, 2.0, 8.0, 20.0, 35.0}) w.push_back(y * kOmega0);
  const auto ibp = emission_amplitudes(h, w);
  double peak = 0.0;
  for (const cplx& m : ibp) peak = std::max(peak, std::abs(m));
  for (std::size_t k = 0; k < w.size(); ++k) {
    CHECK(std::abs(oracle_emission_amplitude(h, w[k]) - ibp[k]) < 1e-3 * peak);
  }
}

TEST_CASE("amplitudes converge under grid refinement and ignore the field sign") {
  const auto h1 = single_pulse(10.0, 0.05);
  const auto h2 = single_pulse(10.0, 0.05, 2.0);
  const auto hn = single_pulse(10.0, 0.05, 1.0, -1.0);
  std::vector<double> w;
  for (double y : {1.0, 5.0, 12.0, 25.0}) w.push_back(y * kOmega0);
  const auto m1 = emission_amplitudes(h1, w);
  const auto m2 = emission_amplitudes(h2, w);
  const auto mn = emission_amplitudes(hn, w);
  for (std::size_t k = 0; k < w.size(); ++k) {
    CHECK(std::fabs(std::abs(m1[k]) - std::abs(m2[k])) < 1e-6 * std::abs(m2[k]));
    CHECK(std::fabs(std::abs(m1[k]) - std::abs(mn[k])) < 1e-10 * std::abs(m1[k]));
  }
  const double p1 = oracle_excitation_probability(h1, tls()).p_e;
  const double pn = oracle_excitation_probability(hn, tls()).p_e;
  CHECK(std::fabs(p1 - pn) < 1e-10 * p1);
}

TEST_CASE("emission amplitude tends to the leading-order sudden form for short pulses") {
  // M ~ (2 omega0 / w) int dt e^{i w t} chi0^2(t)
  const double ratio = 30.0;
  const PulseSpectrum s = PulseSpectrum::gaussian(kOmega0, ratio * kOmega0);
  const PulseArea area(lens(), s, energy_for_eta(s, 0.05), tls(), 0.0);
  const auto h = propagate_driven_tls(train_drive(area, s, tls(), 1, 0.0), kOmega0);
  const double dt = 0.25 * area_time_step(s, tls());
  const int n = static_cast<int>(area.half_window() / dt);
  std::vector<double> t, c2;
  for (int i = -n; i <= n; ++i) {
    t.push_back(i * dt);
    const double c = area.chi(i * dt);
    c2.push_back(c * c * dt);
  }
  auto reference = [&](double w) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) sum += c2[i] * std::polar(1.0, w * t[i]);
    return 2.0 * kOmega0 / w * std::abs(sum);
  };
  // locate the peak of w^3 |M|^2 on a coarse scan
  double best = 0.0, wpk = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double w = k * 0.5 * s.spectral_width();
    const double r = reference(w);
    if (w * w * w * r * r > best) {
      best = w * w * w * r * r;
      wpk = w;
    }
  }
  const std::vector<double> w{wpk};
  CHECK(std::abs(emission_amplitudes(h, w)[0]) == doctest::Approx(reference(wpk)).epsilon(0.05));
}

TEST_CASE("static component of the drive vanishes") {
  std::vector<double> c0;
  for (double ratio : {3.0, 10.0, 30.0}) {
    const auto h = single_pulse(ratio, 0.3);
    c0.push_back(std::norm(oracle_c0(h)));
    if (ratio == 10.0) CHECK(c0.back() <= 0.1 * max_excited_population(h));
  }
  CHECK(c0[0] > c0[1]);
  CHECK(c0[1] > c0[2]);
}

TEST_CASE("two-pulse train doubles the probability") {
  OracleSetup one;
  one.eta = 0.05;
  OracleSetup two = one;
  two.pulses = 2;
  const double p1 = run_oracle_comparison(tls(), one).p_e_oracle;
  const double p2 = run_oracle_comparison(tls(), two).p_e_oracle;
  CHECK(p2 / p1 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("oracle tracks the leading-order sudden reference at short pulses") {
  OracleSetup st;
  st.gamma_over_omega0 = 30.0;
  const OracleReport r = run_oracle_comparison(tls(), st);
  CHECK(r.p_e_oracle == doctest::Approx(r.p_e_sudden_reference).epsilon(0.02));
  CHECK(r.eta_actual == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(r.perturbative);
  CHECK(r.weak_field);
  CHECK(r.unitarity_error < 1e-10);
  CHECK_THROWS_AS(run_oracle_comparison(tls(), OracleSetup{.eta = -1.0}), InvalidParameter);
}

TEST_CASE("history and system must agree") {
  const auto h = single_pulse(10.0, 0.05);
  CHECK_THROWS_AS(oracle_excitation_probability(h, TwoLevelSystem(2.0 * kOmega0, kGamma0)), InvalidParameter);
}
