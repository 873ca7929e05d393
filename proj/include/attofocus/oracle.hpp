#pragma once

// Exact two-level dynamics under the classical drive, first order in the
// coupling to the free modes. Basis order is (|e>, |g>).

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "attofocus/excitation.hpp"
#include "attofocus/focal.hpp"

namespace attofocus {

struct Mat2 {
  std::array<std::complex<double>, 4> m{};  // row-major

  static Mat2 identity() noexcept { return {{1.0, 0.0, 0.0, 1.0}}; }
  std::complex<double>& operator()(int r, int c) noexcept { return m[2 * r + c]; }
  const std::complex<double>& operator()(int r, int c) const noexcept { return m[2 * r + c]; }
  Mat2 adjoint() const noexcept;
  /// max |(U^dagger U - 1)_ij|
  double unitarity_error() const noexcept;
};

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;

/// U(t_i, t_0) on a uniform grid. Internally times are in 1/frequency_unit.
class PropagatorHistory {
 public:
  PropagatorHistory(TimeGrid grid, double omega0, double frequency_unit, std::vector<Mat2> u);

  const TimeGrid& grid() const noexcept { return grid_; }
  double omega0() const noexcept { return omega0_; }
  double frequency_unit() const noexcept { return unit_; }
  std::size_t size() const noexcept { return u_.size(); }
  const Mat2& at(std::size_t i) const { return u_.at(i); }
  const Mat2& final() const noexcept { return u_.back(); }
  /// U(t_j, t_i) = U_j U_i^dagger
  Mat2 between(std::size_t j, std::size_t i) const;
  double max_unitarity_error() const noexcept;

 private:
  TimeGrid grid_;
  double omega0_;
  double unit_;
  std::vector<Mat2> u_;
};

/// Drive sampled at the two Gauss points t_i + c_k h of every step.
struct DriveSamples {
  TimeGrid grid;               // s
  std::vector<double> stage1;  // rad/s at c1 = 1/2 - sqrt(3)/6
  std::vector<double> stage2;  // rad/s at c2 = 1/2 + sqrt(3)/6
};

inline constexpr double kGaussStage1 = 0.5 - 0.28867513459481288225;
inline constexpr double kGaussStage2 = 0.5 + 0.28867513459481288225;

/// Solves i dU/dt = [omega0 |e><e| + Omega(t) sigma_x] U with the fourth-order
/// two-stage Magnus exponent, exponentiated exactly. Throws NumericalError if
/// unitarity drifts by more than 1e-8. `frequency_unit` defaults to omega0,
/// or to 1/step when omega0 = 0.
PropagatorHistory propagate_driven_tls(const std::function<double(double)>& rabi, double omega0,
                                       const TimeGrid& grid, double frequency_unit = 0.0);
PropagatorHistory propagate_driven_tls(const DriveSamples& drive, double omega0, double frequency_unit = 0.0);

/// Drive of `pulses` copies of `area` spaced by `period`, each synthesised on
/// its own window; grid covers [-W, (N-1)T + W] with the area time step.
DriveSamples train_drive(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls, int pulses,
                         double period, double grid_scale = 1.0);

/// <e| U(t_end, t_start) |g>
std::complex<double> oracle_c0(const PropagatorHistory& h);

/// max_i |<e|U(t_i, t_start)|g>|^2
double max_excited_population(const PropagatorHistory& h);

/// M(w) = int dt e^{i w t} <e|U(t_end,t) sigma_x U(t,t_start)|g> over the whole
/// real line (s). Free evolution outside the history is summed analytically
/// and each step is integrated with a linear Filon rule.
std::complex<double> oracle_emission_amplitude(const PropagatorHistory& h, double omega_k);

/// The same amplitudes from the equivalent compactly supported form
/// M(w) = 2 omega0 / (w + omega0) int dt e^{i w t} <e|U(t_end,t) sigma_- U(t,t_start)|g>,
/// trapezoid on the history grid. Throws RangeError if the integrand has not
/// decayed at the history ends.
std::vector<std::complex<double>> emission_amplitudes(const PropagatorHistory& h, std::span<const double> omega_k);

struct OracleProbability {
  double p_e = 0.0;
  double cutoff = 0.0;  // rad/s
};

/// p_e = Gamma0 / (2 pi omega0^3) int_0^inf dw w^3 |M(w)|^2.
OracleProbability oracle_excitation_probability(const PropagatorHistory& h, const TwoLevelSystem& tls);

struct OracleSetup {
  double gamma_over_omega0 = 10.0;
  double eta = 0.05;
  int pulses = 1;
  double period_cycles = 14.0;  // omega0 T / (2 pi)
  double grid_scale = 1.0;
  double numerical_aperture = 0.1;
  double focal_length = 1e-3;
  double field_sign = 1.0;
};

struct OracleReport {
  OracleSetup setup;
  double pulse_energy = 0.0;
  double eta_actual = 0.0;
  double p_e_analytic = 0.0;
  double p_e_oracle = 0.0;
  double p_e_sudden_reference = 0.0;
  double relative_deviation = 0.0;
  double c0_abs2 = 0.0;
  double max_excited_population = 0.0;
  double unitarity_error = 0.0;
  std::size_t steps = 0;
  bool perturbative = true;  // oracle p_e <= 0.1
  bool weak_field = true;    // eta <= 0.5
};

/// Gaussian pulses with carrier omega0 and width gamma_over_omega0 * omega0, energy
/// chosen so max chi0 at the focus equals setup.eta.
OracleReport run_oracle_comparison(const TwoLevelSystem& tls, const OracleSetup& setup);

}  // namespace attofocus
