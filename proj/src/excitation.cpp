#include "attofocus/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attofocus/bessel.hpp"
#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/quadrature.hpp"
#include "attofocus/simd/harmonic.hpp"

namespace attofocus {

using constants::pi;
using constants::reduced_planck;
using constants::speed_of_light;
using constants::vacuum_permittivity;

namespace {

constexpr double kWindowWidths = 12.0;
constexpr double kWeakFieldEta = 0.5;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter(std::string(what) + " must be positive");
}

}  // namespace

double dipole_from_rate(double omega0, double gamma0) {
  check_positive(omega0, "transition frequency");
  check_positive(gamma0, "spontaneous rate");
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return std::sqrt(3.0 * pi * vacuum_permittivity * reduced_planck * c3 * gamma0 / (omega0 * omega0 * omega0));
}

double rate_from_dipole(double omega0, double dipole) {
  check_positive(omega0, "transition frequency");
  check_positive(dipole, "dipole moment");
  const double c3 = speed_of_light * speed_of_light * speed_of_light;
  return dipole * dipole * omega0 * omega0 * omega0 / (3.0 * pi * vacuum_permittivity * reduced_planck * c3);
}

TwoLevelSystem::TwoLevelSystem(double transition_frequency, double spontaneous_rate, double inhomogeneous_broadening)
    : omega0_(transition_frequency), gamma0_(spontaneous_rate), gamma_c_(inhomogeneous_broadening) {
  check_positive(omega0_, "transition frequency");
  check_positive(gamma0_, "spontaneous rate");
  if (!(gamma_c_ >= 0.0) || !std::isfinite(gamma_c_)) {
    throw InvalidParameter("inhomogeneous broadening must be non-negative");
  }
  dipole_ = dipole_from_rate(omega0_, gamma0_);
}

void PulseTrainConfig::validate() const {
  if (pulse_count < 0) throw InvalidParameter("pulse count must be non-negative");
  check_positive(period, "pulse period");
  check_positive(pulse_energy, "pulse energy");
}

bool PulseTrainConfig::resonant(const TwoLevelSystem& tls) const noexcept {
  if (pulse_count <= 1) return true;
  const double cycles = tls.transition_frequency() * period / constants::two_pi;
  return std::fabs(cycles - std::round(cycles)) <= 1e-6;
}

double PulseTrainConfig::unitary_budget(const TwoLevelSystem& tls) const noexcept {
  return tls.dephasing_rate() * pulse_count * period;
}

bool PulseTrainConfig::separated(const PulseSpectrum& s) const noexcept {
  return period >= 10.0 / s.spectral_width();
}

double area_time_step(const PulseSpectrum& s, const TwoLevelSystem& tls, double grid_scale) {
  check_positive(grid_scale, "grid scale");
  const double dt = std::min(constants::two_pi / (40.0 * tls.transition_frequency()), 1.0 / (40.0 * s.spectral_width()));
  return dt / grid_scale;
}

PulseArea::PulseArea(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls,
                     double rho, double field_sign)
    : unit_(tls.transition_frequency()) {
  check_positive(energy, "pulse energy");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidParameter("radial coordinate must be >= 0");
  g.require_far_field(s);
  const double na_c = g.numerical_aperture() / speed_of_light;
  const double window = kWindowWidths / s.spectral_width() + na_c * rho;
  half_window_ = window * unit_;
  bandwidth_ = s.carrier_frequency() + 6.0 * s.spectral_width();

  const double scale = field_sign * tls.dipole() / (reduced_planck * pi) * na_c *
                       std::sqrt(2.0 * energy / (vacuum_permittivity * speed_of_light));
  const SpectralSamples sp = s.samples(window + na_c * rho);
  x_.resize(sp.size());
  b_.resize(sp.size());
  db_.resize(sp.size());
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const double w = sp.omega[j];
    x_[j] = w / unit_;
    b_[j] = scale * sp.weight[j] * special::bessel_j1_over_x(na_c * w * rho) * sp.phi[j];
    db_[j] = std::complex<double>(0.0, -x_[j]) * b_[j];
  }
}

double PulseArea::chi(double tau) const {
  const double t = tau * unit_;
  double sum = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) sum += (b_[j] * std::polar(1.0, -x_[j] * t)).real();
  return sum;
}

double PulseArea::rabi(double tau) const {
  const double t = tau * unit_;
  double sum = 0.0;
  for (std::size_t j = 0; j < x_.size(); ++j) sum += (db_[j] * std::polar(1.0, -x_[j] * t)).real();
  return sum * unit_;
}

namespace {

void synthesize_real(const std::vector<double>& x, const std::vector<std::complex<double>>& amp, double t0, double dt,
                     std::span<double> out) {
  std::vector<std::complex<double>> z(out.size());
  simd::synthesize(x, amp, t0, dt, z);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[i].real();
}

}  // namespace

void PulseArea::chi_reduced(double t0, double dt, std::span<double> out) const { synthesize_real(x_, b_, t0, dt, out); }

void PulseArea::rabi_reduced(double t0, double dt, std::span<double> out) const {
  synthesize_real(x_, db_, t0, dt, out);
}

ChiTrace ChiTrace::from_function(const std::function<double(double)>& fn, double half_window, double step,
                                 double bandwidth) {
  check_positive(half_window, "window half-width");
  check_positive(step, "time step");
  check_positive(bandwidth, "bandwidth");
  const auto m = static_cast<std::size_t>(std::ceil(half_window / step));
  ChiTrace tr;
  tr.step = step;
  tr.start = -static_cast<double>(m) * step;
  tr.bandwidth = bandwidth;
  tr.values.resize(2 * m + 1);
  for (std::size_t i = 0; i < tr.values.size(); ++i) tr.values[i] = fn(tr.at(i));
  return tr;
}

ChiTrace sample_chi(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls, double grid_scale) {
  const double dt = area_time_step(s, tls, grid_scale);
  const auto m = static_cast<std::size_t>(std::ceil(area.half_window() / dt));
  ChiTrace tr;
  tr.step = dt;
  tr.start = -static_cast<double>(m) * dt;
  tr.bandwidth = area.bandwidth();
  tr.values.resize(2 * m + 1);
  const double u = area.frequency_unit();
  area.chi_reduced(tr.start * u, dt * u, tr.values);
  return tr;
}

double chi_of_time(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls,
                   double rho, double t) {
  return PulseArea(g, s, energy, tls, rho).chi(t - rephasing_time(g));
}

double eta(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls, double grid_scale) {
  const ChiTrace tr = sample_chi(area, s, tls, grid_scale);
  const auto it = std::max_element(tr.values.begin(), tr.values.end());
  const auto i = static_cast<std::size_t>(it - tr.values.begin());
  double best = *it;
  if (i == 0 || i + 1 == tr.values.size()) return best;
  double a = tr.at(i - 1);
  double b = tr.at(i + 1);
  double ra = area.rabi(a);
  const double rb = area.rabi(b);
  if (!(ra >= 0.0 && rb <= 0.0)) return best;
  for (int k = 0; k < 100 && b - a > 1e-15 * tr.step; ++k) {
    const double m = 0.5 * (a + b);
    const double rm = area.rabi(m);
    if (rm > 0.0) {
      a = m;
      ra = rm;
    } else {
      b = m;
    }
  }
  return std::max(best, area.chi(0.5 * (a + b)));
}

double eta(const FocusingGeometry& g, const PulseSpectrum& s, double energy, const TwoLevelSystem& tls,
           double grid_scale) {
  return eta(PulseArea(g, s, energy, tls, 0.0), s, tls, grid_scale);
}

namespace {

// int_0^inf dy y^power | sum_i dt K(t_i) chi_i^2 e^{i y t_i} |^2 in reduced units.
FIntegralResult kernel_power_integral(const TwoLevelSystem& tls, const ChiTrace& chi, int power, bool carrier_sine) {
  if (chi.values.size() < 3) throw InvalidParameter("pulse-area trace needs at least 3 samples");
  check_positive(chi.step, "trace time step");
  check_positive(chi.bandwidth, "trace bandwidth");
  const double u = tls.transition_frequency();
  const double x0 = 1.0;  // omega0 in its own units
  const double dt = chi.step * u;
  const double t0 = chi.start * u;
  const std::size_t n = chi.values.size();

  double peak = 0.0;
  for (double v : chi.values) peak = std::max(peak, std::fabs(v));
  FIntegralResult res;
  res.time_samples = n;
  if (peak == 0.0) return res;
  const double edge = std::max(std::fabs(chi.values.front()), std::fabs(chi.values.back()));
  if (edge > 1e-6 * peak) {
    std::ostringstream os;
    os << "pulse area has not decayed at the window edges (edge/peak = " << edge / peak << ")";
    throw InvalidParameter(os.str());
  }

  std::vector<std::complex<double>> samples(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * dt;
    const double k = carrier_sine ? std::sin(x0 * t) : 1.0;
    const double w = (i == 0 || i + 1 == n) ? 0.5 * dt : dt;
    samples[i] = w * k * chi.values[i] * chi.values[i];
  }

  const double half_window = std::max(std::fabs(t0), std::fabs(t0 + dt * static_cast<double>(n - 1)));
  const double nyquist = pi / dt;
  const double initial = chi.bandwidth / u;
  quad::CutoffOptions opt;
  opt.max_doublings = 0;
  for (double c = 2.0 * initial; c <= 0.5 * nyquist; c *= 2.0) ++opt.max_doublings;
  if (opt.max_doublings < 1) throw NumericalError("pulse-area grid too coarse for the outer frequency integral");

  std::vector<std::complex<double>> spectrum;
  auto integrand = [&](std::span<const double> y, std::span<double> out) {
    spectrum.resize(y.size());
    simd::analyze(samples, t0, dt, y, spectrum);
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = std::pow(y[k], power) * std::norm(spectrum[k]);
  };
  auto width = [&](double cutoff) { return std::min(cutoff / 24.0, 6.0 / half_window); };
  const quad::CutoffResult r = quad::integrate_to_cutoff(integrand, initial, width, opt);
  res.value = r.value * std::pow(u, power - 1);
  res.cutoff = r.cutoff * u;
  return res;
}

}  // namespace

FIntegralResult f_integral(const TwoLevelSystem& tls, const ChiTrace& chi) {
  return kernel_power_integral(tls, chi, 3, true);
}

FIntegralResult sudden_reference_integral(const TwoLevelSystem& tls, const ChiTrace& chi) {
  return kernel_power_integral(tls, chi, 1, false);
}

ExcitationModel::ExcitationModel(const PulseTrainConfig& train, const TwoLevelSystem& tls, const FocusingGeometry& g,
                                 const PulseSpectrum& s, const NumericsOptions& options)
    : train_(train), tls_(tls), g_(g), s_(s), options_(options) {
  train_.validate();
  check_positive(options_.grid_scale, "grid scale");
  eta_ = attofocus::eta(PulseArea(g_, s_, train_.pulse_energy, tls_, 0.0), s_, tls_, options_.grid_scale);
  focal_ = at(0.0);
}

double ExcitationModel::f_at(double rho) const {
  const PulseArea area(g_, s_, train_.pulse_energy, tls_, rho);
  return f_integral(tls_, sample_chi(area, s_, tls_, options_.grid_scale)).value;
}

double ExcitationModel::probability(double f) const {
  const double w0 = tls_.transition_frequency();
  return f * 2.0 * train_.pulse_count * tls_.spontaneous_rate() / (pi * w0 * w0 * w0);
}

ExcitationResult ExcitationModel::at(double rho) const {
  ExcitationResult r;
  r.rho = rho;
  r.eta = eta_;
  r.f_value = f_at(rho);
  r.p_e = probability(r.f_value);
  r.flags.weak_field = eta_ <= kWeakFieldEta * (1.0 + 1e-9);
  r.flags.ultrafast = s_.spectral_width() / tls_.transition_frequency() >= 3.0;
  r.flags.resonant_train = train_.resonant(tls_);
  r.flags.unitary_budget = train_.unitary_budget(tls_) <= 0.1;
  r.flags.separated_pulses = train_.separated(s_);
  if (r.p_e > 1.0 && !options_.allow_unphysical) {
    std::ostringstream os;
    os << "weak-field excitation probability " << r.p_e << " exceeds 1 (eta = " << eta_
       << "); inputs lie outside the perturbative regime";
    throw RegimeViolation(os.str());
  }
  return r;
}

double ExcitationModel::resolution(double rho) const {
  if (!(focal_.p_e > 0.0)) throw InvalidState("excitation probability vanishes at the focus");
  if (rho == 0.0) return 1.0;
  const double p = probability(f_at(rho));
  return 2.0 * p / (focal_.p_e + p);
}

ExcitationResult excitation_probability(const PulseTrainConfig& train, const TwoLevelSystem& tls,
                                        const FocusingGeometry& g, const PulseSpectrum& s, double rho,
                                        const NumericsOptions& options) {
  const ExcitationModel model(train, tls, g, s, options);
  return rho == 0.0 ? model.focal() : model.at(rho);
}

double excitation_resolution(const PulseTrainConfig& train, const TwoLevelSystem& tls, const FocusingGeometry& g,
                             const PulseSpectrum& s, double rho, const NumericsOptions& options) {
  return ExcitationModel(train, tls, g, s, options).resolution(rho);
}

RadialCurve excitation_resolution_curve(const ExcitationModel& model, std::span<const double> radii) {
  std::vector<double> v(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) v[i] = model.resolution(radii[i]);
  CurveMetadata meta;
  meta.quantity = "excitation_resolution";
  meta.value_unit = "1";
  return RadialCurve(CurveKind::resolution, {radii.begin(), radii.end()}, std::move(v), std::move(meta));
}

double excitation_spot_size(const ExcitationModel& model, const PulseSpectrum& s, const FocusingGeometry& g,
                            double threshold, std::size_t points, double max_rho_over_scale) {
  const double max_rho = max_rho_over_scale * s.mean_wavelength() / g.numerical_aperture();
  const std::vector<double> radii = radial_grid(max_rho, points);
  const RadialCurve curve = excitation_resolution_curve(model, radii);
  return spot_size(curve, [&](double r) { return model.resolution(r); }, threshold);
}

double imaging_rate(const PulseTrainConfig& train, const TwoLevelSystem& tls, double p_e_focal) {
  if (!(p_e_focal >= 0.0 && p_e_focal <= 1.0)) throw InvalidParameter("excitation probability must lie in [0, 1]");
  return p_e_focal / (train.pulse_count * train.period + 1.0 / tls.spontaneous_rate());
}

ClosedFormCoefficients closed_form_coefficients(const TwoLevelSystem& tls, double gamma_over_omega0,
                                                double numerical_aperture, double grid_scale) {
  check_positive(gamma_over_omega0, "Gamma/omega0");
  const double w0 = tls.transition_frequency();
  const PulseSpectrum s = PulseSpectrum::gaussian(w0, gamma_over_omega0 * w0);
  constexpr double focal_length = 1e-3;
  const FocusingGeometry g(focal_length, numerical_aperture * focal_length);
  PulseTrainConfig train;
  train.pulse_count = 1;
  train.period = 14.0 * constants::two_pi / w0;
  train.pulse_energy = 1e-12;
  NumericsOptions opt;
  opt.grid_scale = grid_scale;
  opt.allow_unphysical = true;
  const ExcitationResult r = excitation_probability(train, tls, g, s, 0.0, opt);
  const double g0 = tls.spontaneous_rate();
  ClosedFormCoefficients c;
  c.probability = r.p_e / (std::pow(r.eta, 4) * g0 / w0);
  c.area = r.eta / (numerical_aperture *
                    std::sqrt(train.pulse_energy * g0 / (reduced_planck * w0 * s.spectral_width())));
  return c;
}

}  // namespace attofocus
