#pragma once

#include <optional>
#include <vector>

#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/parallel.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/types.hpp"

// Measurement theory on top of the CSS algebra: the HHG displacement channel,
// the wavepacket two-outcome POVM, post-selected quantum operations with
// probability densities, symbolic measurement operators, their Fock-space
// effects, and the POVM completeness quadrature.
//
// Mode layout everywhere: mode 0 is the fundamental (q = 1), mode j the
// harmonic q = j + 1; a state fed to the channel has n_modes == table.N.

namespace hhq::cond {

enum class outcome_label { excited, vacuum };  // n~ != 0  /  0~

struct conditioning_outcome {
  css::css_state state;  // unnormalized post-measurement state
  double probability = 0.0;
  outcome_label label = outcome_label::excited;
};

// Symbolic measurement operator scale * (1 - c |ket><bra|) o Displacements,
// displacements applied first. `scale` carries the channel phase e^{i sum phi}
// and the post-selection overlap, so apply_operator reproduces the
// quantum_operation pipeline exactly (not just up to normalization); for the
// canonical post-selections with zero phases it equals 1.
struct measurement_operator {
  std::size_t n_modes = 0;          // dimension of the space it acts on
  std::vector<cplx> displacements;  // one per mode, index order
  cplx scale{1.0, 0.0};
  struct rank_one_correction {
    cplx c;                      // strength of the |ket><bra| subtraction
    std::vector<cplx> bra_amps;  // coherent amplitudes, one per mode
    std::vector<cplx> ket_amps;
  };
  std::optional<rank_one_correction> correction;
};

// Sum of the table's phases phi_q in ascending q. Every builder and the
// channel share this exact accumulation order.
double total_phase(const dipole::shift_table& t);

// K = e^{i sum phi_q} prod_q D(chi_q): per-mode displacement plus carried
// global phase. Unitary. Requires s.n_modes == t.N.
css::css_state hhg_channel(const css::css_state& s, const dipole::shift_table& t);

// The |0~> reference state |alpha> x |{0_q}> the POVM splits against.
css::css_state wavepacket_vacuum(cplx alpha, std::size_t n_modes);

// Pi_{n~!=0} = 1 - |0~><0~|. Probability <s|Pi|s>/<s|s| (squared norm of the
// output for normalized input); zero input stays zero with probability 0.
conditioning_outcome pi_excited(const css::css_state& s, cplx alpha,
                                double compress_tol = 1e-14);

// Pi_0~ = |0~><0~|; complement of pi_excited.
conditioning_outcome pi_vacuum(const css::css_state& s, cplx alpha,
                               double compress_tol = 1e-14);

// Channel then pi_excited on |alpha> x |{0}>: the two-term entangled state
//   |alpha+chi_1> x |{chi_q}>  -  xi prod_q xi_q |alpha> x |{0}>
// (times the carried global phase), xi = <alpha|alpha+chi_1>,
// xi_q = e^{-|chi_q|^2/2}; squared norm 1 - e^{-(|chi_1|^2 + Omega)}.
conditioning_outcome build_phi_hh(cplx alpha, const dipole::shift_table& t,
                                  double compress_tol = 1e-14);

// Full conditioning pipeline: build phi_hh, then post-select the measured
// modes at the given amplitudes. Probability is the squared norm of the
// unnormalized survivor — a density per d^2 chi~ / pi per measured mode.
conditioning_outcome quantum_operation(cplx alpha, const dipole::shift_table& t,
                                       const css::mode_selection& measured,
                                       const std::vector<cplx>& postsel,
                                       double compress_tol = 1e-14);

enum class operator_variant { fundamental_measured, harmonics_measured };

// Closed-form operator for the two canonical conditioning geometries with an
// arbitrary post-selection point. harmonics_measured at chi~ = chi gives
// c = e^{-Omega}, bra = ket = alpha, displacements = {chi_1}; fundamental_
// measured at alpha + chi_1 gives c = e^{-|chi_1|^2}, bra = ket = {0_q},
// displacements = {chi_q, q >= 2}.
measurement_operator make_measurement_operator(cplx alpha, const dipole::shift_table& t,
                                               operator_variant variant,
                                               const std::vector<cplx>& postsel);

// Displacements first, then the rank-one correction (the operator is written
// <..> prod D with the displacement product rightmost). Term count grows by
// at most one.
css::css_state apply_operator(const measurement_operator& m, const css::css_state& s,
                              double compress_tol = 1e-14);

// E = M+M on the truncated survivor-mode Fock space. Hermitian, PSD.
fock::fock_operator effect_matrix(const measurement_operator& m, std::size_t cutoff);

// (1/pi) Integral d^2chi~ sum_{nu in {0~, n~!=0}} M_nu+ M_nu for a single
// harmonic mode (N = 2, fundamental shift zero), evaluated on the truncated
// fundamental space by trapezoidal quadrature over the grid; returns the
// operator-norm deviation from identity restricted to the lower-half block
// (first cutoff/2 rows/cols). Grid must be centered at 0 and its effective
// radius must cover |chi| + 6/sqrt(2). Row-parallel under `policy` with a
// fixed pairwise reduction: results are bit-identical across policies.
double completeness_check(cplx alpha, cplx chi, std::size_t cutoff,
                          const phase_grid& grid,
                          exec_policy policy = exec_policy::serial);

}  // namespace hhq::cond
