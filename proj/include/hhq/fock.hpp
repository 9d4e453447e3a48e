#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hhq/css.hpp"
#include "hhq/types.hpp"

// Truncated-Fock brute-force engine. Exists to verify the CSS algebra and to
// evaluate POVM effects as explicit matrices; never part of the production
// pipeline. Cutoffs stay small (<= ~48 per mode, <= 3 modes) on purpose.

namespace hhq::fock {

struct fock_vector {
  std::size_t cutoff = 0;   // D, per mode
  std::size_t n_modes = 1;  // amplitudes length is D^n_modes
  Eigen::VectorXcd amps;    // row-major mode ordering: mode 0 varies slowest
  double leakage = 0.0;     // 1 - sum |c_n|^2 at construction where tracked
};

struct fock_operator {
  std::size_t cutoff = 0;
  std::size_t n_modes = 1;
  Eigen::MatrixXcd mat;
};

// |alpha> expanded to number states: c_n = e^{-|a|^2/2} a^n / sqrt(n!).
// Guards: |alpha|^2 <= D/4 (precondition), truncation leakage < 1e-8
// (guard_error); both report the cutoff that would suffice.
fock_vector coherent_fock(cplx alpha, std::size_t cutoff);

// D(chi) = exp(chi a+ - conj(chi) a) in the truncated basis (dense matrix
// exponential). Unitarity enforced on the low-energy block: the top-left
// (D/2)x(D/2) block of U+U must match identity to 1e-8.
fock_operator displacement_matrix(cplx chi, std::size_t cutoff);

// Linear combination of tensor products of coherent Fock vectors.
// Guards: per-mode amplitude as coherent_fock; total dimension D^m <= 1e6.
fock_vector css_to_fock(const css::css_state& s, std::size_t cutoff);

// Reduced density matrix of |v><v| over the kept modes (any subset, order as
// listed). Hermitian; trace equals norm^2(v).
fock_operator partial_trace(const fock_vector& v, const css::mode_selection& keep);

// --- small helpers the verification suites lean on ---

cplx inner(const fock_vector& a, const fock_vector& b);  // <a|b>
double norm(const fock_vector& v);

fock_operator identity(std::size_t cutoff);
fock_operator number_operator(std::size_t cutoff);          // diag(n)
fock_operator parity_operator(std::size_t cutoff);          // diag((-1)^n)
fock_operator rank_one(const fock_vector& a, const fock_vector& b);  // |a><b|
fock_operator kron(const fock_operator& a, const fock_operator& b);
fock_vector kron(const fock_vector& a, const fock_vector& b);
fock_vector apply(const fock_operator& op, const fock_vector& v);

// Eigenvalues of a Hermitian operator, ascending. Throws guard_error if the
// matrix is not Hermitian to 1e-10 relative.
std::vector<double> hermitian_eigenvalues(const fock_operator& op);
// max |eigenvalue| of a Hermitian operator.
double hermitian_operator_norm(const fock_operator& op);

// Re-embeds v into a larger per-mode cutoff (zero-padding each mode).
fock_vector pad(const fock_vector& v, std::size_t new_cutoff);

// Wigner function of a single-mode vector at gamma:
// W(gamma) = (2/pi) <v| D(gamma) P D(gamma)+ |v>, P the parity operator.
double wigner_point(const fock_vector& v, cplx gamma);

// von Neumann entropy -sum l ln l of a density matrix (natural log).
// Eigenvalues below -1e-12 * trace throw; small negatives clip to 0.
double entropy_of(const fock_operator& rho);

}  // namespace hhq::fock
