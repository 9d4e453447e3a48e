#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "hhq/conditioning.hpp"
#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/types.hpp"

// Closed-form constructors for the named target states. Each builder writes
// its term coefficients with the exact same primitive calls (in the same
// order) the conditioning pipeline performs, so the two agree to well under
// 1e-12 per coefficient even at |alpha| ~ 1e7. The pipeline is the ground
// truth; these are the closed forms checked against it.
//
// Harmonic survivor states (psi_omega, w_limit) index their modes 0..N-2:
// slot j holds harmonic order q = j + 2.

namespace hhq::states {

enum class state_label { phi_g, phi_hh, psi_omega, w_limit, cat };

std::string label_name(state_label l);

struct named_state {
  state_label label = state_label::phi_g;
  css::css_state state;  // unnormalized
  double emission_probability = 0.0;
  cplx alpha{0.0, 0.0};           // parameter provenance
  dipole::shift_table table;      // parameter provenance
};

// P(emission) = 1 - e^{-(|chi_1|^2 + Omega)}; equals pi_excited's probability
// on |phi_g>. alpha is provenance only (the value is alpha-independent).
double emission_probability(cplx alpha, const dipole::shift_table& t);

// |phi_g> = K_HHG |alpha> x |{0}>: one term, |alpha+chi_1> x |{chi_q}> with
// the carried global phase.
named_state build_phi_g(cplx alpha, const dipole::shift_table& t);

// |Phi_HH>: two terms, |alpha+chi_1> x |{chi_q}> - xi prod xi_q |alpha> x |{0}>.
named_state build_phi_hh(cplx alpha, const dipole::shift_table& t);

// |Psi_Omega> on the N-1 harmonic modes:
// x|chi_q> - e^{-|chi_1|^2} prod_q e^{-|chi_q|^2/2} x|0_q>. Requires N >= 3.
named_state build_psi_omega(cplx alpha, const dipole::shift_table& t);

// Cat on the fundamental: |alpha+chi_1> - <alpha|alpha+chi_1> e^{-Omega} |alpha>.
// Squared norm (derived): 1 - e^{-|chi_1|^2 - Omega} (2 - e^{-Omega}).
named_state build_cat(cplx alpha, const dipole::shift_table& t);

// O(|chi|^2) truncation of psi_omega on three harmonic orders {q, r, s}:
// chi_q |100> + chi_r |010> + chi_s |001>, unnormalized, cutoff-2 Fock space.
// The |chi| < 0.3 validity guard is warning-level: when violated the state is
// still computed and *guard_ok (if given) is set false.
fock::fock_vector w_limit(const dipole::shift_table& t,
                          const std::array<std::size_t, 3>& harmonic_orders,
                          bool* guard_ok = nullptr);

}  // namespace hhq::states
