#include "hhq/states.hpp"

#include <cmath>

namespace hhq::states {

namespace {

// First (channel) term's coefficient and amplitudes, written with the exact
// operation sequence hhg_channel performs on |alpha> x |{0}>.
void channel_term(cplx alpha, const dipole::shift_table& t, cplx& c1,
                  std::vector<cplx>& amps1) {
  c1 = cplx{1.0, 0.0};
  amps1.assign(t.N, cplx{0.0, 0.0});
  amps1[0] = alpha;
  for (std::size_t m = 0; m < t.N; ++m) {
    c1 *= std::polar(1.0, css::displacement_phase(t.chi[m], amps1[m]));
    amps1[m] += t.chi[m];
  }
  c1 *= std::polar(1.0, cond::total_phase(t));
}

// Second (vacuum-projection) term coefficient: -<0~|K|alpha, {0}>, with the
// joint-exponent accumulation css::inner uses.
cplx projection_coeff(cplx alpha, const dipole::shift_table& t, cplx c1,
                      const std::vector<cplx>& amps1) {
  cplx e{0.0, 0.0};
  e += css::overlap_exponent(alpha, amps1[0]);
  for (std::size_t m = 1; m < t.N; ++m)
    e += css::overlap_exponent(cplx{0.0, 0.0}, amps1[m]);
  if (e.real() < css::underflow_exponent) return {0.0, 0.0};
  return -(c1 * std::exp(e.real()) * std::polar(1.0, e.imag()));
}

}  // namespace

std::string label_name(state_label l) {
  switch (l) {
    case state_label::phi_g: return "phi_g";
    case state_label::phi_hh: return "phi_hh";
    case state_label::psi_omega: return "psi_omega";
    case state_label::w_limit: return "w_limit";
    case state_label::cat: return "cat";
  }
  throw precondition_error("label_name: unknown label");
}

double emission_probability(cplx alpha, const dipole::shift_table& t) {
  (void)alpha;  // provenance parameter; the closed form is alpha-independent
  dipole::validate(t);
  const double x = std::norm(t.chi[0]) + dipole::decoherence_factor(t);
  return -std::expm1(-x);
}

named_state build_phi_g(cplx alpha, const dipole::shift_table& t) {
  dipole::validate(t);
  cplx c1;
  std::vector<cplx> amps1;
  channel_term(alpha, t, c1, amps1);
  named_state out;
  out.label = state_label::phi_g;
  out.state = css::compress(css::product_state(c1, amps1));
  out.emission_probability = emission_probability(alpha, t);
  out.alpha = alpha;
  out.table = t;
  return out;
}

named_state build_phi_hh(cplx alpha, const dipole::shift_table& t) {
  dipole::validate(t);
  cplx c1;
  std::vector<cplx> amps1;
  channel_term(alpha, t, c1, amps1);
  const cplx c2 = projection_coeff(alpha, t, c1, amps1);

  css::css_state s;
  s.n_modes = t.N;
  s.terms.push_back({c1, amps1});
  std::vector<cplx> amps2(t.N, cplx{0.0, 0.0});
  amps2[0] = alpha;
  s.terms.push_back({c2, std::move(amps2)});

  named_state out;
  out.label = state_label::phi_hh;
  out.state = css::compress(s);
  out.emission_probability = emission_probability(alpha, t);
  out.alpha = alpha;
  out.table = t;
  return out;
}

named_state build_psi_omega(cplx alpha, const dipole::shift_table& t) {
  dipole::validate(t);
  if (t.N < 3)
    throw precondition_error("build_psi_omega: need N >= 3 (at least two harmonics)");
  cplx c1;
  std::vector<cplx> amps1;
  channel_term(alpha, t, c1, amps1);
  const cplx c2 = projection_coeff(alpha, t, c1, amps1);
  const cplx shifted = amps1[0];  // alpha + chi_1, the canonical post-selection

  css::css_state s;
  s.n_modes = t.N - 1;
  s.terms.push_back({c1 * css::coherent_overlap(shifted, amps1[0]),
                     std::vector<cplx>(amps1.begin() + 1, amps1.end())});
  s.terms.push_back({c2 * css::coherent_overlap(shifted, alpha),
                     std::vector<cplx>(t.N - 1, cplx{0.0, 0.0})});

  named_state out;
  out.label = state_label::psi_omega;
  out.state = css::compress(s);
  out.emission_probability = emission_probability(alpha, t);
  out.alpha = alpha;
  out.table = t;
  return out;
}

named_state build_cat(cplx alpha, const dipole::shift_table& t) {
  dipole::validate(t);
  cplx c1;
  std::vector<cplx> amps1;
  channel_term(alpha, t, c1, amps1);
  const cplx c2 = projection_coeff(alpha, t, c1, amps1);

  cplx c1cat = c1, c2cat = c2;
  for (std::size_t q = 2; q <= t.N; ++q) {
    c1cat *= css::coherent_overlap(t.chi[q - 1], amps1[q - 1]);
    c2cat *= css::coherent_overlap(t.chi[q - 1], cplx{0.0, 0.0});
  }

  css::css_state s;
  s.n_modes = 1;
  s.terms.push_back({c1cat, {amps1[0]}});
  s.terms.push_back({c2cat, {alpha}});

  named_state out;
  out.label = state_label::cat;
  out.state = css::compress(s);
  out.emission_probability = emission_probability(alpha, t);
  out.alpha = alpha;
  out.table = t;
  return out;
}

fock::fock_vector w_limit(const dipole::shift_table& t,
                          const std::array<std::size_t, 3>& harmonic_orders,
                          bool* guard_ok) {
  dipole::validate(t);
  for (std::size_t q : harmonic_orders)
    if (q < 2 || q > t.N)
      throw precondition_error("w_limit: harmonic order out of range (need 2..N)");
  if (harmonic_orders[0] == harmonic_orders[1] ||
      harmonic_orders[0] == harmonic_orders[2] ||
      harmonic_orders[1] == harmonic_orders[2])
    throw precondition_error("w_limit: harmonic orders must be distinct");

  bool ok = true;
  for (std::size_t q : harmonic_orders)
    if (std::abs(t.chi[q - 1]) >= 0.3) ok = false;
  if (guard_ok) *guard_ok = ok;

  fock::fock_vector v;
  v.cutoff = 2;
  v.n_modes = 3;
  v.amps = Eigen::VectorXcd::Zero(8);
  v.amps[4] = t.chi[harmonic_orders[0] - 1];  // |100>
  v.amps[2] = t.chi[harmonic_orders[1] - 1];  // |010>
  v.amps[1] = t.chi[harmonic_orders[2] - 1];  // |001>
  return v;
}

}  // namespace hhq::states
