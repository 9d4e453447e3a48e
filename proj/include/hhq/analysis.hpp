#pragma once

#include <cstddef>
#include <vector>

#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/parallel.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/types.hpp"

// State characterization: Wigner scans and negativity, fidelities, photon
// statistics, entanglement entropy through the Gram-matrix Schmidt method,
// and harmonic-cutoff scans.

namespace hhq::analysis {

// Fills g.values with W(gamma) = (2/pi) <s|D(gamma) Parity D(gamma)+|s>,
// via the pairwise coherent-term formula in log space; integral of W over
// phase space equals <s|s>. Single-mode input only. Point-parallel under
// `policy`; output is bit-identical across policies.
phase_grid wigner(const css::css_state& s, const phase_grid& g,
                  exec_policy policy = exec_policy::serial);

// integral(|W|) - integral(W) by the grid's trapezoid weights; >= 0.
double negativity_volume(const phase_grid& w);

// |<a|b>|^2 / (<a|a><b|b>). Throws on zero-norm input.
double fidelity(const css::css_state& a, const css::css_state& b);
double fidelity(const fock::fock_vector& a, const fock::fock_vector& b);

struct photon_stats_result {
  double mean = 0.0;      // <a+a> on the selected mode
  double variance = 0.0;  // <(a+a)^2> - mean^2
  // set when the input norm deviated from 1 by more than 1e-6 (the state is
  // normalized internally either way)
  bool norm_flagged = false;
};

// Analytic moments from pairwise coherent matrix elements
// (<beta|a+a|gamma> = conj(beta) gamma <beta|gamma>, etc.).
photon_stats_result photon_stats(const css::css_state& s, std::size_t mode);

struct entropy_report {
  std::vector<double> schmidt_coefficients;  // descending, sums to 1
  double entropy = 0.0;                      // natural log
  double entropy_bits = 0.0;                 // entropy / ln 2
  css::mode_selection bipartition;           // the kept modes
  // set when the Gram eigenvalue floor (1e-14) discarded directions
  // (linearly dependent coherent vectors); never silent
  bool gram_regularized = false;
};

// Schmidt spectrum of the `keep` | rest bipartition of a normalized copy of
// s, computed in the span of the coherent terms: T x T Gram matrices and a
// generalized eigenproblem instead of any Fock truncation. Exact up to
// rounding for every CSS state, including |alpha| ~ 1e7.
entropy_report entanglement_entropy(const css::css_state& s,
                                    const css::mode_selection& keep);

struct scan_row {
  std::size_t N = 0;
  double decoherence = 0.0;          // Omega(N)
  double emission_probability = 0.0;  // 1 - e^{-(|chi_1|^2 + Omega)}
  double cat_negativity = 0.0;        // negativity volume of the alpha = 0 cat
};

// Recomputes the shift table for each cutoff in Ns (ascending, each >= 2)
// with the waveform and kappa held fixed, and tabulates downstream scalars.
// The cat negativity column uses the canonical alpha = 0 cat on a fixed-rule
// grid (center chi_1/2, radius |chi_1|/2 + 5, step 0.1).
std::vector<scan_row> cutoff_scan(const dipole::dipole_waveform& w, double kappa,
                                  const std::vector<std::size_t>& Ns,
                                  exec_policy policy = exec_policy::serial);

}  // namespace hhq::analysis
