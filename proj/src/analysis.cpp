#include "hhq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "hhq/states.hpp"

namespace hhq::analysis {

namespace {

double checked_norm2(const css::css_state& s, const char* who) {
  const cplx n2 = css::inner(s, s);
  double coeff_scale = 0.0;
  for (const auto& t : s.terms) coeff_scale += std::norm(t.coeff);
  if (coeff_scale <= 0.0) coeff_scale = 1.0;
  if (std::abs(n2.imag()) > 1e-10 * std::max(std::abs(n2.real()), coeff_scale))
    throw guard_error(std::string(who) + ": squared norm has a non-real part");
  return n2.real() < 0.0 ? 0.0 : n2.real();
}

}  // namespace

phase_grid wigner(const css::css_state& s, const phase_grid& g, exec_policy policy) {
  css::validate(s);
  validate(g);
  if (s.n_modes != 1)
    throw precondition_error("wigner: single-mode states only (reduce or post-select first)");

  const std::size_t n = grid_axis_points(g);
  phase_grid out = g;
  out.values.assign(n * n, 0.0);

  const auto& terms = s.terms;
  auto point_value = [&terms](cplx gamma) {
    // W = (2/pi) sum_jk conj(c_j) c_k e^{-2i Im(gamma conj(b_k))} <b_j|2g - b_k>
    double acc = 0.0;
    for (const auto& tj : terms)
      for (const auto& tk : terms) {
        const cplx bj = tj.amps[0], bk = tk.amps[0];
        cplx e = css::overlap_exponent(bj, 2.0 * gamma - bk);
        e.imag(e.imag() - 2.0 * css::displacement_phase(gamma, bk));
        if (e.real() < css::underflow_exponent) continue;
        const cplx v = std::conj(tj.coeff) * tk.coeff * std::exp(e.real()) *
                       std::polar(1.0, e.imag());
        acc += v.real();
      }
    return 2.0 / std::numbers::pi * acc;
  };

  auto row_job = [&](std::size_t i) {
    const double x = g.center.real() + grid_axis_offset(g, i);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = g.center.imag() + grid_axis_offset(g, j);
      out.values[i * n + j] = point_value({x, y});
    }
  };

  if (policy == exec_policy::serial) {
    for (std::size_t i = 0; i < n; ++i) row_job(i);
  } else {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) row_job(i);
  }
  return out;
}

double negativity_volume(const phase_grid& w) {
  validate(w);
  if (w.values.empty())
    throw precondition_error("negativity_volume: grid carries no values");
  const std::size_t n = grid_axis_points(w);
  // per-row partial sums, fixed pairwise reduction: deterministic
  std::vector<double> rows(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double wx = grid_axis_weight(w, i);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = w.values[i * n + j];
      acc += wx * grid_axis_weight(w, j) * (std::abs(v) - v);
    }
    rows[i] = acc;
  }
  return pairwise_sum(std::move(rows));
}

double fidelity(const css::css_state& a, const css::css_state& b) {
  const double na = checked_norm2(a, "fidelity");
  const double nb = checked_norm2(b, "fidelity");
  if (na == 0.0 || nb == 0.0) throw precondition_error("fidelity: zero-norm input");
  return std::norm(css::inner(a, b)) / (na * nb);
}

double fidelity(const fock::fock_vector& a, const fock::fock_vector& b) {
  const double na = fock::norm(a), nb = fock::norm(b);
  if (na == 0.0 || nb == 0.0) throw precondition_error("fidelity: zero-norm input");
  return std::norm(fock::inner(a, b)) / (na * na * nb * nb);
}

photon_stats_result photon_stats(const css::css_state& s, std::size_t mode) {
  css::validate(s);
  if (mode >= s.n_modes) throw precondition_error("photon_stats: mode index out of range");
  const double n2 = checked_norm2(s, "photon_stats");
  if (n2 == 0.0) throw precondition_error("photon_stats: zero state");

  photon_stats_result r;
  r.norm_flagged = std::abs(std::sqrt(n2) - 1.0) > 1e-6;

  // <n> and <n^2> = <a+2 a2> + <n> from pairwise matrix elements
  cplx mean_acc = 0.0, sq_acc = 0.0;
  for (const auto& tj : s.terms)
    for (const auto& tk : s.terms) {
      cplx e{0.0, 0.0};
      for (std::size_t m = 0; m < s.n_modes; ++m)
        e += css::overlap_exponent(tj.amps[m], tk.amps[m]);
      if (e.real() < css::underflow_exponent) continue;
      const cplx ov = std::conj(tj.coeff) * tk.coeff * std::exp(e.real()) *
                      std::polar(1.0, e.imag());
      const cplx bg = std::conj(tj.amps[mode]) * tk.amps[mode];
      mean_acc += bg * ov;
      sq_acc += (bg * bg + bg) * ov;
    }
  const double mean = mean_acc.real() / n2;
  const double second = sq_acc.real() / n2;
  r.mean = mean;
  r.variance = second - mean * mean;
  return r;
}

entropy_report entanglement_entropy(const css::css_state& s,
                                    const css::mode_selection& keep) {
  css::validate(s);
  if (keep.modes.empty() || keep.modes.size() >= s.n_modes)
    throw precondition_error("entanglement_entropy: keep must be a proper nonempty subset");
  for (std::size_t m : keep.modes)
    if (m >= s.n_modes)
      throw precondition_error("entanglement_entropy: mode index out of range");
  const double n2 = checked_norm2(s, "entanglement_entropy");
  if (n2 == 0.0) throw precondition_error("entanglement_entropy: zero state");

  std::vector<bool> in_keep(s.n_modes, false);
  for (std::size_t m : keep.modes) in_keep[m] = true;

  const auto T = static_cast<Eigen::Index>(s.terms.size());
  // Gram of the kept-side coherent factors, and the reduced-density
  // coefficient matrix M_jk = c_j conj(c_k) <B_k|B_j> / <s|s>.
  Eigen::MatrixXcd gram(T, T), coeff(T, T);
  for (Eigen::Index j = 0; j < T; ++j)
    for (Eigen::Index k = 0; k < T; ++k) {
      cplx eg{0.0, 0.0}, eb{0.0, 0.0};
      for (std::size_t m = 0; m < s.n_modes; ++m) {
        const cplx aj = s.terms[static_cast<std::size_t>(j)].amps[m];
        const cplx ak = s.terms[static_cast<std::size_t>(k)].amps[m];
        if (in_keep[m])
          eg += css::overlap_exponent(aj, ak);
        else
          eb += css::overlap_exponent(ak, aj);  // <B_k|B_j>
      }
      gram(j, k) = std::exp(eg.real()) * std::polar(1.0, eg.imag());
      const cplx cj = s.terms[static_cast<std::size_t>(j)].coeff;
      const cplx ck = s.terms[static_cast<std::size_t>(k)].coeff;
      coeff(j, k) =
          cj * std::conj(ck) * std::exp(eb.real()) * std::polar(1.0, eb.imag()) / n2;
    }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gs(gram);
  if (gs.info() != Eigen::Success)
    throw guard_error("entanglement_entropy: Gram eigensolver failed");

  entropy_report rep;
  rep.bipartition = keep;

  const double gmax = std::max(gs.eigenvalues().maxCoeff(), 1.0);
  const double floor = 1e-14 * gmax;
  std::vector<Eigen::Index> live;
  for (Eigen::Index i = 0; i < T; ++i) {
    if (gs.eigenvalues()[i] > floor)
      live.push_back(i);
    else
      rep.gram_regularized = true;  // dependent coherent directions dropped
  }
  if (live.empty()) throw guard_error("entanglement_entropy: Gram matrix vanished");

  Eigen::MatrixXcd vr(T, static_cast<Eigen::Index>(live.size()));
  Eigen::VectorXcd sr(static_cast<Eigen::Index>(live.size()));
  for (std::size_t i = 0; i < live.size(); ++i) {
    vr.col(static_cast<Eigen::Index>(i)) = gs.eigenvectors().col(live[i]);
    sr[static_cast<Eigen::Index>(i)] = std::sqrt(gs.eigenvalues()[live[i]]);
  }
  // X = S^{1/2} V+ M V S^{1/2}: same nonzero spectrum as the reduced density
  const Eigen::MatrixXcd x =
      sr.asDiagonal() * (vr.adjoint() * coeff * vr) * sr.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> xs(x, Eigen::EigenvaluesOnly);
  if (xs.info() != Eigen::Success)
    throw guard_error("entanglement_entropy: Schmidt eigensolver failed");

  double total = 0.0;
  for (Eigen::Index i = 0; i < xs.eigenvalues().size(); ++i) {
    double l = xs.eigenvalues()[i];
    if (l < -1e-12)
      throw guard_error("entanglement_entropy: negative Schmidt weight beyond tolerance");
    if (l < 0.0) l = 0.0;
    rep.schmidt_coefficients.push_back(l);
    total += l;
  }
  std::sort(rep.schmidt_coefficients.rbegin(), rep.schmidt_coefficients.rend());
  if (std::abs(total - 1.0) > 1e-8)
    throw guard_error("entanglement_entropy: Schmidt weights do not sum to 1");

  double h = 0.0;
  for (double l : rep.schmidt_coefficients)
    if (l > 0.0) h -= l * std::log(l);
  rep.entropy = std::max(h, 0.0);
  rep.entropy_bits = rep.entropy / std::numbers::ln2;
  return rep;
}

std::vector<scan_row> cutoff_scan(const dipole::dipole_waveform& w, double kappa,
                                  const std::vector<std::size_t>& Ns,
                                  exec_policy policy) {
  dipole::validate(w);
  if (Ns.empty()) throw precondition_error("cutoff_scan: empty cutoff list");
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 2) throw precondition_error("cutoff_scan: cutoffs must be >= 2");
    if (i > 0 && Ns[i] <= Ns[i - 1])
      throw precondition_error("cutoff_scan: cutoffs must be strictly ascending");
  }

  std::vector<scan_row> rows;
  rows.reserve(Ns.size());
  for (std::size_t N : Ns) {
    const dipole::shift_table t = dipole::all_shifts(w, N, kappa, policy);
    scan_row r;
    r.N = N;
    r.decoherence = dipole::decoherence_factor(t);
    r.emission_probability = states::emission_probability({0.0, 0.0}, t);

    const states::named_state cat = states::build_cat({0.0, 0.0}, t);
    const double cn2 = checked_norm2(cat.state, "cutoff_scan");
    if (cn2 > 0.0) {
      const css::css_state unit = css::scale(cat.state, 1.0 / std::sqrt(cn2));
      phase_grid g;
      g.center = t.chi[0] / 2.0;
      g.radius = std::abs(t.chi[0]) / 2.0 + 5.0;
      g.step = 0.1;
      r.cat_negativity = negativity_volume(wigner(unit, g, policy));
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hhq::analysis
