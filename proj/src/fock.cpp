#include "hhq/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace hhq::fock {

namespace {

std::size_t suggested_cutoff(cplx alpha) {
  const double a2 = std::norm(alpha);
  const double a = std::sqrt(a2);
  return static_cast<std::size_t>(std::ceil(std::max(4.0 * a2, a2 + 10.0 * a + 20.0)));
}

void check_amp_guard(cplx alpha, std::size_t cutoff, const char* who) {
  if (cutoff < 2) throw precondition_error(std::string(who) + ": cutoff must be >= 2");
  if (std::norm(alpha) > static_cast<double>(cutoff) / 4.0)
    throw precondition_error(std::string(who) + ": |alpha|^2 > cutoff/4; need cutoff >= " +
                             std::to_string(suggested_cutoff(alpha)));
}

std::size_t pow_sz(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

fock_vector coherent_fock(cplx alpha, std::size_t cutoff) {
  check_amp_guard(alpha, cutoff, "coherent_fock");
  fock_vector v;
  v.cutoff = cutoff;
  v.n_modes = 1;
  v.amps.resize(static_cast<Eigen::Index>(cutoff));
  cplx c = std::exp(-0.5 * std::norm(alpha));
  double captured = 0.0;
  for (std::size_t n = 0; n < cutoff; ++n) {
    v.amps[static_cast<Eigen::Index>(n)] = c;
    captured += std::norm(c);
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  v.leakage = 1.0 - captured;
  if (v.leakage > 1e-8)
    throw guard_error("coherent_fock: truncation leakage " + std::to_string(v.leakage) +
                      " > 1e-8; need cutoff >= " + std::to_string(suggested_cutoff(alpha)));
  return v;
}

fock_operator displacement_matrix(cplx chi, std::size_t cutoff) {
  check_amp_guard(chi, cutoff, "displacement_matrix");
  const auto D = static_cast<Eigen::Index>(cutoff);
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(D, D);
  for (Eigen::Index n = 0; n + 1 < D; ++n) {
    const double r = std::sqrt(static_cast<double>(n + 1));
    gen(n + 1, n) = chi * r;              // chi a+
    gen(n, n + 1) = -std::conj(chi) * r;  // -conj(chi) a
  }
  fock_operator op;
  op.cutoff = cutoff;
  op.n_modes = 1;
  op.mat = gen.exp();

  const Eigen::Index H = D / 2;
  const Eigen::MatrixXcd block =
      (op.mat.adjoint() * op.mat).topLeftCorner(H, H) - Eigen::MatrixXcd::Identity(H, H);
  if (block.cwiseAbs().maxCoeff() >= 1e-8)
    throw guard_error("displacement_matrix: unitarity check failed on the low block");
  return op;
}

fock_vector css_to_fock(const css::css_state& s, std::size_t cutoff) {
  css::validate(s);
  const double dim = std::pow(static_cast<double>(cutoff), static_cast<double>(s.n_modes));
  if (dim > 1e6)
    throw precondition_error("css_to_fock: total dimension D^m exceeds 1e6");
  const std::size_t total = pow_sz(cutoff, s.n_modes);

  fock_vector out;
  out.cutoff = cutoff;
  out.n_modes = s.n_modes;
  out.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
  double leak = 0.0;
  for (const css::term& t : s.terms) {
    Eigen::VectorXcd acc(1);
    acc[0] = t.coeff;
    for (cplx a : t.amps) {
      const fock_vector f = coherent_fock(a, cutoff);
      leak = std::max(leak, f.leakage);
      Eigen::VectorXcd next(acc.size() * f.amps.size());
      for (Eigen::Index i = 0; i < acc.size(); ++i)
        next.segment(i * f.amps.size(), f.amps.size()) = acc[i] * f.amps;
      acc = std::move(next);
    }
    out.amps += acc;
  }
  out.leakage = leak;
  return out;
}

fock_operator partial_trace(const fock_vector& v, const css::mode_selection& keep) {
  const std::size_t m = v.n_modes;
  for (std::size_t k : keep.modes)
    if (k >= m) throw precondition_error("partial_trace: mode index out of range");
  for (std::size_t i = 0; i < keep.modes.size(); ++i)
    for (std::size_t j = i + 1; j < keep.modes.size(); ++j)
      if (keep.modes[i] == keep.modes[j])
        throw precondition_error("partial_trace: repeated mode index");
  if (keep.modes.empty()) throw precondition_error("partial_trace: empty selection");

  const std::size_t D = v.cutoff;
  std::vector<bool> kept(m, false);
  for (std::size_t k : keep.modes) kept[k] = true;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < m; ++j)
    if (!kept[j]) rest.push_back(j);

  const std::size_t rows = pow_sz(D, keep.modes.size());
  const std::size_t cols = pow_sz(D, rest.size());

  // strides in the flat row-major index (mode 0 slowest)
  std::vector<std::size_t> stride(m, 1);
  for (std::size_t j = m; j-- > 1;) stride[j - 1] = stride[j] * D;

  // Gather |v> into a (kept) x (rest) matrix A, then rho = A A+.
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(cols));
  std::vector<std::size_t> digit(m, 0);
  for (std::size_t flat = 0; flat < static_cast<std::size_t>(v.amps.size()); ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = 0; j < m; ++j) {
      digit[j] = rem / stride[j];
      rem %= stride[j];
    }
    std::size_t r = 0;
    for (std::size_t k : keep.modes) r = r * D + digit[k];
    std::size_t c = 0;
    for (std::size_t k : rest) c = c * D + digit[k];
    A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
        v.amps[static_cast<Eigen::Index>(flat)];
  }

  fock_operator rho;
  rho.cutoff = D;
  rho.n_modes = keep.modes.size();
  rho.mat = A * A.adjoint();
  return rho;
}

cplx inner(const fock_vector& a, const fock_vector& b) {
  if (a.cutoff != b.cutoff || a.n_modes != b.n_modes)
    throw precondition_error("fock inner: shape mismatch");
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the left argument
}

double norm(const fock_vector& v) { return v.amps.norm(); }

fock_operator identity(std::size_t cutoff) {
  fock_operator op;
  op.cutoff = cutoff;
  op.mat = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(cutoff),
                                      static_cast<Eigen::Index>(cutoff));
  return op;
}

fock_operator number_operator(std::size_t cutoff) {
  fock_operator op;
  op.cutoff = cutoff;
  op.mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(cutoff),
                                  static_cast<Eigen::Index>(cutoff));
  for (Eigen::Index n = 0; n < op.mat.rows(); ++n) op.mat(n, n) = static_cast<double>(n);
  return op;
}

fock_operator parity_operator(std::size_t cutoff) {
  fock_operator op;
  op.cutoff = cutoff;
  op.mat = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(cutoff),
                                  static_cast<Eigen::Index>(cutoff));
  for (Eigen::Index n = 0; n < op.mat.rows(); ++n) op.mat(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return op;
}

fock_operator rank_one(const fock_vector& a, const fock_vector& b) {
  if (a.cutoff != b.cutoff || a.n_modes != b.n_modes)
    throw precondition_error("rank_one: shape mismatch");
  fock_operator op;
  op.cutoff = a.cutoff;
  op.n_modes = a.n_modes;
  op.mat = a.amps * b.amps.adjoint();
  return op;
}

fock_operator kron(const fock_operator& a, const fock_operator& b) {
  if (a.cutoff != b.cutoff) throw precondition_error("kron: cutoff mismatch");
  fock_operator op;
  op.cutoff = a.cutoff;
  op.n_modes = a.n_modes + b.n_modes;
  op.mat = Eigen::kroneckerProduct(a.mat, b.mat);
  return op;
}

fock_vector kron(const fock_vector& a, const fock_vector& b) {
  if (a.cutoff != b.cutoff) throw precondition_error("kron: cutoff mismatch");
  fock_vector v;
  v.cutoff = a.cutoff;
  v.n_modes = a.n_modes + b.n_modes;
  v.amps = Eigen::kroneckerProduct(a.amps, b.amps);
  v.leakage = std::max(a.leakage, b.leakage);
  return v;
}

fock_vector apply(const fock_operator& op, const fock_vector& v) {
  if (op.mat.cols() != v.amps.size())
    throw precondition_error("apply: shape mismatch");
  fock_vector out = v;
  out.amps = op.mat * v.amps;
  return out;
}

std::vector<double> hermitian_eigenvalues(const fock_operator& op) {
  const double scale = std::max(op.mat.cwiseAbs().maxCoeff(), 1.0);
  if ((op.mat - op.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw guard_error("hermitian_eigenvalues: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.mat,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw guard_error("hermitian_eigenvalues: eigensolver failed");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double hermitian_operator_norm(const fock_operator& op) {
  double best = 0.0;
  for (double l : hermitian_eigenvalues(op)) best = std::max(best, std::abs(l));
  return best;
}

fock_vector pad(const fock_vector& v, std::size_t new_cutoff) {
  if (new_cutoff < v.cutoff) throw precondition_error("pad: new cutoff smaller than old");
  const std::size_t m = v.n_modes;
  fock_vector out;
  out.cutoff = new_cutoff;
  out.n_modes = m;
  out.leakage = v.leakage;
  out.amps = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(pow_sz(new_cutoff, m)));
  std::vector<std::size_t> digit(m, 0);
  for (std::size_t flat = 0; flat < static_cast<std::size_t>(v.amps.size()); ++flat) {
    std::size_t rem = flat;
    for (std::size_t j = m; j-- > 0;) {
      digit[j] = rem % v.cutoff;
      rem /= v.cutoff;
    }
    std::size_t nf = 0;
    for (std::size_t j = 0; j < m; ++j) nf = nf * new_cutoff + digit[j];
    out.amps[static_cast<Eigen::Index>(nf)] = v.amps[static_cast<Eigen::Index>(flat)];
  }
  return out;
}

double wigner_point(const fock_vector& v, cplx gamma) {
  if (v.n_modes != 1) throw precondition_error("wigner_point: single-mode only");
  const fock_operator d = displacement_matrix(gamma, v.cutoff);
  const Eigen::VectorXcd shifted = d.mat.adjoint() * v.amps;
  double val = 0.0;
  for (Eigen::Index n = 0; n < shifted.size(); ++n)
    val += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(shifted[n]);
  return 2.0 / std::numbers::pi * val;
}

double entropy_of(const fock_operator& rho) {
  const auto eigs = hermitian_eigenvalues(rho);
  double trace = 0.0;
  for (double l : eigs) trace += l;
  const double floor = -1e-12 * std::max(trace, 1.0);
  double h = 0.0;
  for (double l : eigs) {
    if (l < floor) throw guard_error("entropy_of: negative eigenvalue beyond tolerance");
    if (l > 0.0) h -= l * std::log(l);
  }
  return h;
}

}  // namespace hhq::fock
