#include "hhq/dipole.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hhq::dipole {

void validate(const dipole_waveform& w) {
  if (!(w.dt > 0.0)) throw precondition_error("waveform: dt must be > 0");
  if (!(w.omega > 0.0)) throw precondition_error("waveform: omega must be > 0");
  if (w.samples.size() < 2) throw precondition_error("waveform: need at least 2 samples");
  for (double v : w.samples)
    if (!std::isfinite(v)) throw precondition_error("waveform: non-finite sample");
  if (!std::isfinite(w.t0)) throw precondition_error("waveform: non-finite t0");
}

dipole_waveform synth_dipole(const dipole_spec& spec) {
  if (spec.cycles < 1)
    throw precondition_error("synth_dipole: cycles must be >= 1 (got " +
                             std::to_string(spec.cycles) + ")");
  if (!(spec.omega > 0.0)) throw precondition_error("synth_dipole: omega must be > 0");
  if (spec.components.empty())
    throw precondition_error("synth_dipole: no harmonic components given");
  if (spec.k == dipole_spec::kind::monochromatic && spec.components.size() != 1)
    throw precondition_error("synth_dipole: monochromatic takes exactly one component");
  int max_q = 0;
  for (const auto& c : spec.components) {
    if (c.q < 1) throw precondition_error("synth_dipole: harmonic order must be >= 1");
    max_q = std::max(max_q, c.q);
  }
  if (spec.samples_per_cycle < 8 * max_q)
    throw precondition_error(
        "synth_dipole: samples_per_cycle must be >= 8 x max harmonic order (need >= " +
        std::to_string(8 * max_q) + ", got " + std::to_string(spec.samples_per_cycle) + ")");
  if (spec.k == dipole_spec::kind::enveloped && !(spec.envelope_width > 0.0))
    throw precondition_error("synth_dipole: envelope width must be > 0");

  const double period = 2.0 * std::numbers::pi / spec.omega;
  const std::size_t n = static_cast<std::size_t>(spec.cycles) * spec.samples_per_cycle + 1;

  dipole_waveform w;
  w.t0 = 0.0;
  w.dt = period / spec.samples_per_cycle;
  w.omega = spec.omega;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w.dt * static_cast<double>(i);
    double v = 0.0;
    for (const auto& c : spec.components) v += c.amp * std::cos(c.q * spec.omega * t);
    if (spec.k == dipole_spec::kind::enveloped) {
      const double u = (t - spec.envelope_center) / spec.envelope_width;
      v *= std::exp(-0.5 * u * u);
    }
    w.samples[i] = v;
  }
  return w;
}

namespace {

double trapezoid_weight(std::size_t i, std::size_t n, double dt) {
  return (i == 0 || i + 1 == n) ? 0.5 * dt : dt;
}

}  // namespace

cplx mode_shift(const dipole_waveform& w, int q, double kappa) {
  validate(w);
  if (q < 1) throw precondition_error("mode_shift: q must be >= 1");
  const std::size_t n = w.samples.size();
  const double qw = q * w.omega;
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w.t0 + w.dt * static_cast<double>(i);
    const double wd = trapezoid_weight(i, n, w.dt) * w.samples[i];
    acc_re += wd * std::cos(qw * t);
    acc_im += wd * std::sin(qw * t);
  }
  // -i sqrt(q) kappa (acc_re + i acc_im)
  const double s = std::sqrt(static_cast<double>(q)) * kappa;
  return {s * acc_im, -s * acc_re};
}

double mode_phase(const dipole_waveform& w, int q, double kappa) {
  validate(w);
  if (q < 1) throw precondition_error("mode_phase: q must be >= 1");
  const std::size_t n = w.samples.size();
  const double qw = q * w.omega;
  // sin[qw(t1-t2)] = sin(qw t1) cos(qw t2) - cos(qw t1) sin(qw t2), so the
  // inner integral over t2 < t1 is a running trapezoid of d(t2) cos(qw t2)
  // and d(t2) sin(qw t2).
  double pc = 0.0, ps = 0.0;  // prefix integrals up to t1
  double acc = 0.0;
  double prev_c = 0.0, prev_s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w.t0 + w.dt * static_cast<double>(i);
    const double c = w.samples[i] * std::cos(qw * t);
    const double s = w.samples[i] * std::sin(qw * t);
    if (i > 0) {
      pc += 0.5 * w.dt * (prev_c + c);
      ps += 0.5 * w.dt * (prev_s + s);
    }
    acc += trapezoid_weight(i, n, w.dt) * (s * pc - c * ps);
    prev_c = c;
    prev_s = s;
  }
  return q * kappa * kappa * acc;
}

cplx shift_table::chi_of(std::size_t q) const {
  if (q < 1 || q > N) throw precondition_error("shift_table: q out of range");
  return chi[q - 1];
}

double shift_table::phi_of(std::size_t q) const {
  if (q < 1 || q > N) throw precondition_error("shift_table: q out of range");
  return phi[q - 1];
}

void validate(const shift_table& t) {
  if (t.N < 1) throw precondition_error("shift_table: fundamental entry (q=1) required");
  if (t.chi.size() != t.N || t.phi.size() != t.N)
    throw precondition_error("shift_table: entry count does not match N");
  if (!(t.omega > 0.0)) throw precondition_error("shift_table: omega must be > 0");
  for (cplx c : t.chi)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw precondition_error("shift_table: non-finite shift");
  for (double p : t.phi)
    if (!std::isfinite(p)) throw precondition_error("shift_table: non-finite phase");
}

shift_table table_from_values(double kappa, double omega, std::vector<cplx> chi,
                              std::vector<double> phi) {
  shift_table t;
  t.kappa = kappa;
  t.omega = omega;
  t.N = chi.size();
  t.chi = std::move(chi);
  if (phi.empty()) phi.assign(t.N, 0.0);
  t.phi = std::move(phi);
  validate(t);
  return t;
}

shift_table all_shifts(const dipole_waveform& w, std::size_t N, double kappa,
                       exec_policy policy) {
  validate(w);
  if (N < 2) throw precondition_error("all_shifts: N must be >= 2 (no harmonic modes)");
  shift_table t;
  t.kappa = kappa;
  t.omega = w.omega;
  t.N = N;
  t.chi.resize(N);
  t.phi.resize(N);
  if (policy == exec_policy::serial) {
    for (std::size_t q = 1; q <= N; ++q) {
      t.chi[q - 1] = mode_shift(w, static_cast<int>(q), kappa);
      t.phi[q - 1] = mode_phase(w, static_cast<int>(q), kappa);
    }
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t q = 1; q <= N; ++q) {
      t.chi[q - 1] = mode_shift(w, static_cast<int>(q), kappa);
      t.phi[q - 1] = mode_phase(w, static_cast<int>(q), kappa);
    }
  }
  return t;
}

double decoherence_factor(const shift_table& t) {
  validate(t);
  double omega_sum = 0.0;
  for (std::size_t q = 2; q <= t.N; ++q) omega_sum += std::norm(t.chi[q - 1]);
  return omega_sum;
}

}  // namespace hhq::dipole
