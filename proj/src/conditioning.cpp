#include "hhq/conditioning.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

namespace hhq::cond {

namespace {

// exp of a complex log-amplitude with the underflow floor
cplx exp_amplitude(cplx log_amp) {
  if (log_amp.real() < css::underflow_exponent) return {0.0, 0.0};
  if (log_amp.real() > 700.0)
    throw guard_error("measurement operator: overlap ratio overflows (post-selection "
                      "point too far from the channel output)");
  return std::exp(log_amp.real()) * std::polar(1.0, log_amp.imag());
}

double real_norm2(const css::css_state& s, const char* who) {
  const cplx n2 = css::inner(s, s);
  double coeff_scale = 0.0;
  for (const auto& t : s.terms) coeff_scale += std::norm(t.coeff);
  if (coeff_scale <= 0.0) coeff_scale = 1.0;
  if (std::abs(n2.imag()) > 1e-10 * std::max(std::abs(n2.real()), coeff_scale))
    throw guard_error(std::string(who) + ": squared norm has a non-real part");
  return n2.real() < 0.0 ? 0.0 : n2.real();
}

}  // namespace

double total_phase(const dipole::shift_table& t) {
  double sum = 0.0;
  for (std::size_t q = 1; q <= t.N; ++q) sum += t.phi[q - 1];
  return sum;
}

css::css_state hhg_channel(const css::css_state& s, const dipole::shift_table& t) {
  dipole::validate(t);
  if (s.n_modes != t.N)
    throw precondition_error("hhg_channel: state has " + std::to_string(s.n_modes) +
                             " modes but the table has N = " + std::to_string(t.N));
  css::mode_selection all;
  all.modes.resize(t.N);
  for (std::size_t m = 0; m < t.N; ++m) all.modes[m] = m;
  css::css_state out = css::displace(s, all, t.chi);
  return css::scale(out, std::polar(1.0, total_phase(t)));
}

css::css_state wavepacket_vacuum(cplx alpha, std::size_t n_modes) {
  std::vector<cplx> amps(n_modes, cplx{0.0, 0.0});
  if (n_modes == 0) throw precondition_error("wavepacket_vacuum: need at least one mode");
  amps[0] = alpha;
  return css::product_state(1.0, std::move(amps));
}

conditioning_outcome pi_excited(const css::css_state& s, cplx alpha, double compress_tol) {
  css::validate(s);
  conditioning_outcome out;
  out.label = outcome_label::excited;
  const double n2s = real_norm2(s, "pi_excited");
  if (n2s == 0.0) {
    out.state = css::css_state{s.n_modes, {}};
    out.probability = 0.0;
    return out;
  }
  const css::css_state vac = wavepacket_vacuum(alpha, s.n_modes);
  const cplx ov = css::inner(vac, s);
  out.state = css::compress(css::add(s, css::scale(vac, -ov)), compress_tol);
  double p = real_norm2(out.state, "pi_excited") / n2s;
  if (p > 1.0) {
    if (p > 1.0 + 1e-10) throw guard_error("pi_excited: probability exceeded 1");
    p = 1.0;
  }
  out.probability = p;
  return out;
}

conditioning_outcome pi_vacuum(const css::css_state& s, cplx alpha, double compress_tol) {
  css::validate(s);
  conditioning_outcome out;
  out.label = outcome_label::vacuum;
  const double n2s = real_norm2(s, "pi_vacuum");
  if (n2s == 0.0) {
    out.state = css::css_state{s.n_modes, {}};
    out.probability = 0.0;
    return out;
  }
  const css::css_state vac = wavepacket_vacuum(alpha, s.n_modes);
  const cplx ov = css::inner(vac, s);
  out.state = css::compress(css::scale(vac, ov), compress_tol);
  double p = std::norm(ov) / n2s;
  if (p > 1.0) {
    if (p > 1.0 + 1e-10) throw guard_error("pi_vacuum: probability exceeded 1");
    p = 1.0;
  }
  out.probability = p;
  return out;
}

conditioning_outcome build_phi_hh(cplx alpha, const dipole::shift_table& t,
                                  double compress_tol) {
  const css::css_state vac = wavepacket_vacuum(alpha, t.N);
  return pi_excited(hhg_channel(vac, t), alpha, compress_tol);
}

conditioning_outcome quantum_operation(cplx alpha, const dipole::shift_table& t,
                                       const css::mode_selection& measured,
                                       const std::vector<cplx>& postsel,
                                       double compress_tol) {
  if (measured.modes.empty())
    throw precondition_error("quantum_operation: measured selection is empty");
  for (cplx g : postsel)
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw precondition_error("quantum_operation: non-finite post-selection amplitude");
  conditioning_outcome phi = build_phi_hh(alpha, t, compress_tol);
  conditioning_outcome out;
  out.label = outcome_label::excited;
  if (phi.state.terms.empty()) {
    out.state = css::css_state{t.N - measured.modes.size(), {}};
    out.probability = 0.0;
    return out;
  }
  out.state = css::compress(css::postselect(phi.state, measured, postsel), compress_tol);
  out.probability = real_norm2(out.state, "quantum_operation");
  return out;
}

measurement_operator make_measurement_operator(cplx alpha, const dipole::shift_table& t,
                                               operator_variant variant,
                                               const std::vector<cplx>& postsel) {
  dipole::validate(t);
  if (t.N < 2)
    throw precondition_error("make_measurement_operator: need N >= 2");
  measurement_operator m;
  const cplx phase = std::polar(1.0, total_phase(t));
  cplx log_id{0.0, 0.0}, log_pr{0.0, 0.0};

  if (variant == operator_variant::harmonics_measured) {
    if (postsel.size() != t.N - 1)
      throw precondition_error(
          "make_measurement_operator: harmonics-measured wants one post-selection "
          "amplitude per harmonic (N-1)");
    m.n_modes = 1;
    m.displacements = {t.chi[0]};
    for (std::size_t q = 2; q <= t.N; ++q) {
      const cplx chi_q = t.chi[q - 1];
      const cplx tilde = postsel[q - 2];
      log_id += css::overlap_exponent(tilde, chi_q);
      log_pr += css::overlap_exponent(tilde, {0.0, 0.0}) +
                css::overlap_exponent({0.0, 0.0}, chi_q);
    }
    m.scale = phase * exp_amplitude(log_id);
    measurement_operator::rank_one_correction corr;
    corr.c = exp_amplitude(log_pr - log_id);
    corr.bra_amps = {alpha};
    corr.ket_amps = {alpha};
    if (corr.c != cplx{0.0, 0.0}) m.correction = std::move(corr);
  } else {
    if (postsel.size() != 1)
      throw precondition_error(
          "make_measurement_operator: fundamental-measured wants exactly one "
          "post-selection amplitude");
    m.n_modes = t.N - 1;
    m.displacements.assign(t.chi.begin() + 1, t.chi.end());
    const cplx chi1 = t.chi[0];
    const cplx shifted = alpha + chi1;
    const double theta1 = css::displacement_phase(chi1, alpha);
    log_id = css::overlap_exponent(postsel[0], shifted);
    log_pr = css::overlap_exponent(postsel[0], alpha) +
             css::overlap_exponent(alpha, shifted);
    m.scale = phase * std::polar(1.0, theta1) * exp_amplitude(log_id);
    measurement_operator::rank_one_correction corr;
    corr.c = exp_amplitude(log_pr - log_id);
    corr.bra_amps.assign(m.n_modes, cplx{0.0, 0.0});
    corr.ket_amps.assign(m.n_modes, cplx{0.0, 0.0});
    if (corr.c != cplx{0.0, 0.0}) m.correction = std::move(corr);
  }
  return m;
}

css::css_state apply_operator(const measurement_operator& m, const css::css_state& s,
                              double compress_tol) {
  css::validate(s);
  if (m.n_modes != s.n_modes)
    throw precondition_error("apply_operator: mode count mismatch");
  if (m.displacements.size() != m.n_modes)
    throw precondition_error("apply_operator: malformed operator (displacement count)");
  css::mode_selection all;
  all.modes.resize(m.n_modes);
  for (std::size_t j = 0; j < m.n_modes; ++j) all.modes[j] = j;
  css::css_state out = css::displace(s, all, m.displacements);
  out = css::scale(out, m.scale);
  if (m.correction) {
    const auto& corr = *m.correction;
    if (corr.bra_amps.size() != m.n_modes || corr.ket_amps.size() != m.n_modes)
      throw precondition_error("apply_operator: malformed correction");
    const cplx ov = css::inner(css::product_state(1.0, corr.bra_amps), out);
    out = css::add(out, css::product_state(-corr.c * ov, corr.ket_amps));
  }
  return css::compress(out, compress_tol);
}

fock::fock_operator effect_matrix(const measurement_operator& m, std::size_t cutoff) {
  if (m.n_modes < 1) throw precondition_error("effect_matrix: operator has no modes");
  double dim_d = 1.0;
  for (std::size_t j = 0; j < m.n_modes; ++j) dim_d *= static_cast<double>(cutoff);
  if (dim_d > 2048.0)
    throw precondition_error("effect_matrix: truncated dimension too large (limit 2048)");

  fock::fock_operator u = fock::displacement_matrix(m.displacements[0], cutoff);
  for (std::size_t j = 1; j < m.n_modes; ++j)
    u = fock::kron(u, fock::displacement_matrix(m.displacements[j], cutoff));

  Eigen::MatrixXcd mat = m.scale * u.mat;
  if (m.correction) {
    const auto& corr = *m.correction;
    const fock::fock_vector ket =
        fock::css_to_fock(css::product_state(1.0, corr.ket_amps), cutoff);
    const fock::fock_vector bra =
        fock::css_to_fock(css::product_state(1.0, corr.bra_amps), cutoff);
    mat -= (m.scale * corr.c) * (ket.amps * (bra.amps.adjoint() * u.mat));
  }
  fock::fock_operator e;
  e.cutoff = cutoff;
  e.n_modes = m.n_modes;
  e.mat = mat.adjoint() * mat;
  return e;
}

double completeness_check(cplx alpha, cplx chi, std::size_t cutoff,
                          const phase_grid& grid, exec_policy policy) {
  validate(grid);
  if (std::abs(grid.center) > 1e-12)
    throw precondition_error("completeness_check: grid must be centered at 0");
  const std::size_t n = grid_axis_points(grid);
  const double eff_radius =
      static_cast<double>(grid_half_points(grid)) * grid.step;
  if (eff_radius + 1e-9 < std::abs(chi) + 6.0 / std::sqrt(2.0))
    throw precondition_error(
        "completeness_check: insufficient grid radius (need |chi| + 6/sqrt(2))");

  const auto D = static_cast<Eigen::Index>(cutoff);
  const fock::fock_vector a_vec = fock::coherent_fock(alpha, cutoff);
  const Eigen::MatrixXcd proj = a_vec.amps * a_vec.amps.adjoint();  // |alpha><alpha|
  const Eigen::MatrixXcd proj_sq = proj * proj;
  const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(D, D);

  // one accumulated matrix per grid row; fixed pairwise reduction afterwards
  std::vector<Eigen::MatrixXcd> rows(n);
  auto row_job = [&](std::size_t i) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(D, D);
    const double x = grid_axis_offset(grid, i);
    const double wx = grid_axis_weight(grid, i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = grid_axis_offset(grid, j);
      const double w = wx * grid_axis_weight(grid, j);
      const cplx tilde{x, y};
      const cplx a = css::coherent_overlap(tilde, chi);
      const cplx b = css::coherent_overlap(tilde, {0.0, 0.0}) *
                     css::coherent_overlap({0.0, 0.0}, chi);
      // excited outcome: M = a 1 - b |alpha><alpha|; vacuum outcome: b |alpha><alpha|
      const Eigen::MatrixXcd m_exc = a * ident - b * proj;
      acc += w * (m_exc.adjoint() * m_exc).eval();
      acc += (w * std::norm(b)) * proj_sq;
    }
    rows[i] = std::move(acc);
  };

  if (policy == exec_policy::serial) {
    for (std::size_t i = 0; i < n; ++i) row_job(i);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) row_job(i);
  }

  // pairwise reduction, order fixed by n alone
  std::size_t len = n;
  while (len > 1) {
    std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) rows[i] = rows[2 * i] + rows[2 * i + 1];
    if (len % 2) {
      rows[half] = std::move(rows[len - 1]);
      ++half;
    }
    len = half;
  }

  const Eigen::MatrixXcd total = rows[0] / std::numbers::pi;
  const Eigen::Index H = D / 2;
  fock::fock_operator dev;
  dev.cutoff = static_cast<std::size_t>(H);
  dev.mat = (total - ident).topLeftCorner(H, H);
  return fock::hermitian_operator_norm(dev);
}

}  // namespace hhq::cond
