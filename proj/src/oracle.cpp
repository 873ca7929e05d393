#include "attofocus/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "attofocus/constants.hpp"
#include "attofocus/errors.hpp"
#include "attofocus/quadrature.hpp"
#include "attofocus/simd/harmonic.hpp"

namespace attofocus {

using cplx = std::complex<double>;
using constants::pi;

Mat2 Mat2::adjoint() const noexcept {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

double Mat2::unitarity_error() const noexcept {
  const Mat2 p = adjoint() * *this;
  return std::max({std::abs(p.m[0] - 1.0), std::abs(p.m[1]), std::abs(p.m[2]), std::abs(p.m[3] - 1.0)});
}

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
  return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
           a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

PropagatorHistory::PropagatorHistory(TimeGrid grid, double omega0, double frequency_unit, std::vector<Mat2> u)
    : grid_(grid), omega0_(omega0), unit_(frequency_unit), u_(std::move(u)) {
  if (u_.empty() || u_.size() != grid_.count) throw InvalidParameter("propagator history does not match its grid");
}

Mat2 PropagatorHistory::between(std::size_t j, std::size_t i) const { return at(j) * at(i).adjoint(); }

double PropagatorHistory::max_unitarity_error() const noexcept {
  double e = 0.0;
  for (const Mat2& m : u_) e = std::max(e, m.unitarity_error());
  return e;
}

namespace {

double resolve_unit(double omega0, double step, double frequency_unit) {
  if (frequency_unit > 0.0) return frequency_unit;
  if (omega0 > 0.0) return omega0;
  return 1.0 / step;
}

void check_grid(const TimeGrid& grid) {
  if (grid.count < 2) throw InvalidParameter("propagation grid needs at least two points");
  if (!(grid.step > 0.0) || !std::isfinite(grid.step)) throw InvalidParameter("propagation step must be positive");
}

// One fourth-order Magnus step in reduced units.
Mat2 magnus_step(double h, double x0, double w1, double w2) {
  const double vx = 0.5 * h * (w1 + w2);
  const double vy = std::sqrt(3.0) * h * h * x0 * (w1 - w2) / 12.0;
  const double vz = 0.5 * h * x0;
  const double n = std::sqrt(vx * vx + vy * vy + vz * vz);
  const double c = std::cos(n);
  const double sn = n > 0.0 ? std::sin(n) / n : 1.0;
  const cplx phase = std::polar(1.0, -0.5 * h * x0);
  const cplx mi(0.0, -sn);  // -i sin(n)/n
  Mat2 u;
  u(0, 0) = phase * (c + mi * vz);
  u(0, 1) = phase * (mi * cplx(vx, -vy));
  u(1, 0) = phase * (mi * cplx(vx, vy));
  u(1, 1) = phase * (c - mi * vz);
  return u;
}

PropagatorHistory propagate(const TimeGrid& grid, double omega0, double unit,
                            const std::function<void(std::size_t, double&, double&)>& stages) {
  const double h = grid.step * unit;
  const double x0 = omega0 / unit;
  std::vector<Mat2> u(grid.count);
  u[0] = Mat2::identity();
  for (std::size_t i = 0; i + 1 < grid.count; ++i) {
    double w1 = 0.0;
    double w2 = 0.0;
    stages(i, w1, w2);
    u[i + 1] = magnus_step(h, x0, w1 / unit, w2 / unit) * u[i];
    if ((i + 1) % 256 == 0 || i + 2 == grid.count) {
      const double err = u[i + 1].unitarity_error();
      if (!(err <= 1e-8)) {
        std::ostringstream os;
        os << "propagator unitarity drifted by " << err << " after " << i + 1 << " steps; reduce the time step";
        throw NumericalError(os.str());
      }
    }
  }
  return PropagatorHistory(grid, omega0, unit, std::move(u));
}

}  // namespace

PropagatorHistory propagate_driven_tls(const std::function<double(double)>& rabi, double omega0,
                                       const TimeGrid& grid, double frequency_unit) {
  check_grid(grid);
  if (!(omega0 >= 0.0)) throw InvalidParameter("transition frequency must be non-negative");
  const double unit = resolve_unit(omega0, grid.step, frequency_unit);
  return propagate(grid, omega0, unit, [&](std::size_t i, double& w1, double& w2) {
    w1 = rabi(grid.at(i) + kGaussStage1 * grid.step);
    w2 = rabi(grid.at(i) + kGaussStage2 * grid.step);
  });
}

PropagatorHistory propagate_driven_tls(const DriveSamples& drive, double omega0, double frequency_unit) {
  check_grid(drive.grid);
  if (drive.stage1.size() + 1 != drive.grid.count || drive.stage2.size() + 1 != drive.grid.count) {
    throw InvalidParameter("drive samples must have one value per step and stage");
  }
  if (!(omega0 >= 0.0)) throw InvalidParameter("transition frequency must be non-negative");
  const double unit = resolve_unit(omega0, drive.grid.step, frequency_unit);
  return propagate(drive.grid, omega0, unit, [&](std::size_t i, double& w1, double& w2) {
    w1 = drive.stage1[i];
    w2 = drive.stage2[i];
  });
}

DriveSamples train_drive(const PulseArea& area, const PulseSpectrum& s, const TwoLevelSystem& tls, int pulses,
                         double period, double grid_scale) {
  if (pulses < 1) throw InvalidParameter("oracle needs at least one pulse");
  if (pulses > 1 && !(period > 0.0)) throw InvalidParameter("pulse period must be positive");
  const double h = area_time_step(s, tls, grid_scale);
  const double w = area.half_window();
  const double span = (pulses - 1) * period + 2.0 * w;
  DriveSamples d;
  d.grid.start = -w;
  d.grid.step = h;
  d.grid.count = static_cast<std::size_t>(std::ceil(span / h)) + 1;
  const std::size_t steps = d.grid.count - 1;
  d.stage1.assign(steps, 0.0);
  d.stage2.assign(steps, 0.0);
  const double u = area.frequency_unit();

  for (int p = 0; p < pulses; ++p) {
    const double centre = p * period;
    for (int k = 0; k < 2; ++k) {
      const double c = k == 0 ? kGaussStage1 : kGaussStage2;
      std::vector<double>& out = k == 0 ? d.stage1 : d.stage2;
      const double lo = std::ceil((centre - w - d.grid.start - c * h) / h);
      const double hi = std::floor((centre + w - d.grid.start - c * h) / h);
      const auto i0 = static_cast<std::size_t>(std::max(0.0, lo));
      const auto i1 = static_cast<std::size_t>(std::min(static_cast<double>(steps - 1), hi));
      if (i1 < i0) continue;
      std::vector<double> local(i1 - i0 + 1);
      const double tau0 = d.grid.start + static_cast<double>(i0) * h + c * h - centre;
      area.rabi_reduced(tau0 * u, h * u, local);
      for (std::size_t i = i0; i <= i1; ++i) out[i] += local[i - i0] * u;
    }
  }
  return d;
}

cplx oracle_c0(const PropagatorHistory& h) { return h.final()(0, 1); }

double max_excited_population(const PropagatorHistory& h) {
  double m = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) m = std::max(m, std::norm(h.at(i)(0, 1)));
  return m;
}

namespace {

// int_0^1 e^{i th s} ds and int_0^1 s e^{i th s} ds
void filon_moments(double th, cplx& e0, cplx& e1) {
  if (std::fabs(th) < 0.25) {
    cplx term = 1.0;  // (i th)^k / k!
    e0 = 0.0;
    e1 = 0.0;
    for (int k = 0; k < 20; ++k) {
      e0 += term / static_cast<double>(k + 1);
      e1 += term / static_cast<double>(k + 2);
      term *= cplx(0.0, th) / static_cast<double>(k + 1);
    }
    return;
  }
  const cplx e = std::polar(1.0, th);
  const cplx ith(0.0, th);
  e0 = (e - 1.0) / ith;
  e1 = e / ith + (e - 1.0) / (th * th);
}

// q_j = <e|U(t_end,t_j) sigma_- U(t_j,t_0)|g>
std::vector<cplx> lowering_element(const PropagatorHistory& h) {
  const Mat2& end = h.final();
  std::vector<cplx> q(h.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    const Mat2& u = h.at(j);
    const cplx row = end(0, 0) * std::conj(u(1, 0)) + end(0, 1) * std::conj(u(1, 1));
    q[j] = row * u(0, 1);
  }
  return q;
}

}  // namespace

cplx oracle_emission_amplitude(const PropagatorHistory& h, double omega_k) {
  const double unit = h.frequency_unit();
  const double x0 = h.omega0() / unit;
  const double y = omega_k / unit;
  const double wp = y + x0;
  if (!(wp > 0.0)) throw InvalidParameter("emission frequency must be positive");
  const double dt = h.grid().step * unit;
  const double t0 = h.grid().start * unit;
  const Mat2& end = h.final();

  auto n_at = [&](std::size_t j) {
    const Mat2& u = h.at(j);
    // sigma_x U|g> = (U_gg, U_eg); then U^dagger; then row e of U_end
    const cplx a = u(1, 1);
    const cplx b = u(0, 1);
    const cplx w0 = std::conj(u(0, 0)) * a + std::conj(u(1, 0)) * b;
    const cplx w1 = std::conj(u(0, 1)) * a + std::conj(u(1, 1)) * b;
    const cplx m = end(0, 0) * w0 + end(0, 1) * w1;
    const double t = t0 + static_cast<double>(j) * dt;
    return m * std::polar(1.0, -x0 * t);
  };

  const std::size_t n = h.size();
  const double t_end = t0 + static_cast<double>(n - 1) * dt;
  const cplx iwp(0.0, wp);
  cplx sum = n_at(0) * std::polar(1.0, wp * t0) / iwp;
  cplx e0, e1;
  filon_moments(wp * dt, e0, e1);
  cplx na = n_at(0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const cplx nb = n_at(j + 1);
    const double ta = t0 + static_cast<double>(j) * dt;
    sum += dt * std::polar(1.0, wp * ta) * ((e0 - e1) * na + e1 * nb);
    na = nb;
  }
  sum -= na * std::polar(1.0, wp * t_end) / iwp;
  return sum / unit;
}

std::vector<cplx> emission_amplitudes(const PropagatorHistory& h, std::span<const double> omega_k) {
  const double unit = h.frequency_unit();
  const double x0 = h.omega0() / unit;
  const double dt = h.grid().step * unit;
  const std::size_t n = h.size();
  std::vector<cplx> q = lowering_element(h);
  double peak = 0.0;
  for (const cplx& v : q) peak = std::max(peak, std::abs(v));
  std::vector<cplx> out(omega_k.size(), 0.0);
  if (peak == 0.0) return out;
  const double edge = std::max(std::abs(q.front()), std::abs(q.back()));
  if (edge > 1e-8 * peak) {
    std::ostringstream os;
    os << "emission integrand has not decayed at the history ends (edge/peak = " << edge / peak
       << "); extend the propagation window";
    throw RangeError(os.str());
  }
  for (std::size_t j = 0; j < n; ++j) q[j] *= (j == 0 || j + 1 == n) ? 0.5 * dt : dt;
  // Centre the phase origin on the history so the conjugate time stays small.
  const double centre = 0.5 * dt * static_cast<double>(n - 1);
  std::vector<double> y(omega_k.size());
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = omega_k[k] / unit;
  simd::analyze(q, -centre, dt, y, out);
  const double t0 = h.grid().start * unit;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const cplx shift = std::polar(1.0, y[k] * (t0 + centre));
    out[k] *= shift * (2.0 * x0 / (y[k] + x0)) / unit;
  }
  return out;
}

OracleProbability oracle_excitation_probability(const PropagatorHistory& h, const TwoLevelSystem& tls) {
  if (std::fabs(h.omega0() - tls.transition_frequency()) > 1e-12 * tls.transition_frequency()) {
    throw InvalidParameter("propagator history and two-level system disagree on the transition frequency");
  }
  const double unit = h.frequency_unit();
  const double x0 = h.omega0() / unit;
  const double dt = h.grid().step * unit;
  const double half = 0.5 * dt * static_cast<double>(h.size() - 1);
  const double nyquist = pi / dt;
  const double initial = nyquist / 20.0;
  quad::CutoffOptions opt;
  opt.max_doublings = 0;
  for (double c = 2.0 * initial; c <= 0.5 * nyquist; c *= 2.0) ++opt.max_doublings;

  auto integrand = [&](std::span<const double> y, std::span<double> out) {
    std::vector<double> w(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) w[k] = y[k] * unit;
    const std::vector<cplx> m = emission_amplitudes(h, w);
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k] * y[k] * y[k] * std::norm(m[k] * unit);
  };
  auto width = [&](double cutoff) { return std::min(cutoff / 24.0, 6.0 / half); };
  const quad::CutoffResult r = quad::integrate_to_cutoff(integrand, initial, width, opt);
  OracleProbability p;
  p.p_e = tls.spontaneous_rate() / unit / (2.0 * pi * x0 * x0 * x0) * r.value;
  p.cutoff = r.cutoff * unit;
  return p;
}

OracleReport run_oracle_comparison(const TwoLevelSystem& tls, const OracleSetup& setup) {
  if (!(setup.eta > 0.0)) throw InvalidParameter("oracle eta must be positive");
  if (setup.pulses < 1) throw InvalidParameter("oracle needs at least one pulse");
  const double w0 = tls.transition_frequency();
  const PulseSpectrum s = PulseSpectrum::gaussian(w0, setup.gamma_over_omega0 * w0);
  const FocusingGeometry g(setup.focal_length, setup.numerical_aperture * setup.focal_length);

  constexpr double reference_energy = 1e-12;
  const double eta_ref = eta(g, s, reference_energy, tls, setup.grid_scale);
  OracleReport rep;
  rep.setup = setup;
  rep.pulse_energy = reference_energy * (setup.eta / eta_ref) * (setup.eta / eta_ref);

  PulseTrainConfig train;
  train.pulse_count = setup.pulses;
  train.period = setup.period_cycles * constants::two_pi / w0;
  train.pulse_energy = rep.pulse_energy;
  NumericsOptions opt;
  opt.grid_scale = setup.grid_scale;
  opt.allow_unphysical = true;
  const ExcitationResult analytic = excitation_probability(train, tls, g, s, 0.0, opt);
  rep.eta_actual = analytic.eta;
  rep.p_e_analytic = analytic.p_e;

  const PulseArea area(g, s, rep.pulse_energy, tls, 0.0, setup.field_sign);
  const ChiTrace chi = sample_chi(area, s, tls, setup.grid_scale);
  rep.p_e_sudden_reference = 2.0 * setup.pulses * tls.spontaneous_rate() / (pi * w0) *
                             sudden_reference_integral(tls, chi).value;

  const DriveSamples drive = train_drive(area, s, tls, setup.pulses, train.period, setup.grid_scale);
  const PropagatorHistory hist = propagate_driven_tls(drive, w0);
  rep.steps = hist.size() - 1;
  rep.unitarity_error = hist.max_unitarity_error();
  rep.c0_abs2 = std::norm(oracle_c0(hist));
  rep.max_excited_population = max_excited_population(hist);
  rep.p_e_oracle = oracle_excitation_probability(hist, tls).p_e;
  rep.relative_deviation = std::fabs(rep.p_e_oracle - rep.p_e_analytic) / rep.p_e_analytic;
  rep.perturbative = rep.p_e_oracle <= 0.1;
  rep.weak_field = rep.eta_actual <= 0.5;
  return rep;
}

}  // namespace attofocus
