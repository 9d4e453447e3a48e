#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hhq/types.hpp"

// Exact multimode coherent-state-superposition algebra.
//
// A state is a finite sum  sum_j c_j |beta_j1> x ... x |beta_jM>  of products
// of coherent states, kept unnormalized throughout. All pairwise-overlap
// arithmetic happens on log-amplitudes (the overlap *exponent*), so states
// with |beta| ~ 1e7 neither overflow nor lose the relative phase.

namespace hhq::css {

struct term {
  cplx coeff;
  std::vector<cplx> amps;  // one amplitude per mode
};

struct css_state {
  std::size_t n_modes = 0;
  std::vector<term> terms;  // empty <=> the zero vector of the space
};

// Checks n_modes >= 1, per-term amps length, finiteness. Ops call this on
// entry; it also guards deserialized input.
void validate(const css_state& s);

// Overlap exponents below this are treated as exact zeros: exp(-745) is the
// smallest positive double, and anything near it carries no usable phase.
inline constexpr double underflow_exponent = -700.0;

// log <beta|gamma> = -|gamma - beta|^2 / 2 + i Im(conj(beta) gamma).
// The real part is computed from the difference, which keeps it exact for
// beta ~ gamma even at huge magnitudes (Sterbenz), and makes
// overlap_exponent(b, g) == conj(overlap_exponent(g, b)) hold bitwise.
cplx overlap_exponent(cplx beta, cplx gamma);

// <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma);
// exactly 0 when the exponent's real part is under the floor.
cplx coherent_overlap(cplx beta, cplx gamma);

// Phase angle picked up by displacing |beta> by chi:
// D(chi)|beta> = e^{i Im(chi conj(beta))} |beta + chi>.
// Shared by the channel pipeline and by every closed-form state builder, so
// the two agree bitwise on coefficients.
double displacement_phase(cplx chi, cplx beta);

// Ordered distinct mode indices (0-based; mode 0 is the fundamental q = 1,
// mode j the harmonic q = j + 1).
struct mode_selection {
  std::vector<std::size_t> modes;
};

// <a|b>. Throws precondition_error on mode-count mismatch.
cplx inner(const css_state& a, const css_state& b);

// sqrt(<s|s>). Asserts the imaginary part of <s|s> is below 1e-10 relative.
double norm(const css_state& s);

css_state scale(const css_state& s, cplx factor);
// Concatenates term lists (same mode count required).
css_state add(const css_state& a, const css_state& b);

// D(chi) on one mode.
css_state displace(const css_state& s, std::size_t mode, cplx chi);
// D(chi_i) on each selected mode (selection and shifts zipped pairwise).
css_state displace(const css_state& s, const mode_selection& sel,
                   const std::vector<cplx>& shifts);

// Tensor of rank-one coherent projectors |gamma_i><gamma_i| on the selected
// modes: coefficients pick up the overlaps, selected amplitudes are replaced.
// Mode count unchanged.
css_state project_coherent(const css_state& s, const mode_selection& sel,
                           const std::vector<cplx>& gammas);

// Partial bra <{gamma}|: projects the selected modes onto coherent outcomes
// and removes them, returning the unnormalized conditional state on the
// remaining modes (order preserved). The selection must not cover all modes.
css_state postselect(const css_state& s, const mode_selection& sel,
                     const std::vector<cplx>& outcomes);

// Merges terms whose amplitude vectors coincide within `tol` per component
// (absolute, on re and im separately); then drops terms whose coefficient
// magnitude times unit norm is below tol. First-seen term order is preserved.
// Default tol chosen so physical pipelines never merge distinct branches.
css_state compress(const css_state& s, double tol = 1e-14);

// Text serialization; numbers at 17 significant digits, so a round trip is
// bit-exact. Format: header line, then one line per term: coeff then amps,
// each as "(re,im)".
std::string serialize(const css_state& s);
css_state deserialize(std::string_view text);

// Helpers used all over: a single product coherent term, and vacuum.
css_state product_state(cplx coeff, std::vector<cplx> amps);
css_state vacuum(std::size_t n_modes);

}  // namespace hhq::css
