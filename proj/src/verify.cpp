#include "hhq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "hhq/analysis.hpp"
#include "hhq/conditioning.hpp"
#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/numio.hpp"
#include "hhq/states.hpp"

namespace hhq::verify {

namespace {

constexpr std::size_t kCut = 40;  // Fock cutoff for the oracle comparisons

struct suite {
  std::vector<check_result> checks;
  std::mt19937 rng{20260815u};

  double uni(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  cplx box(double half) { return {uni(-half, half), uni(-half, half)}; }

  css::css_state random_state(std::size_t n_modes, std::size_t max_terms,
                              double amp_half = 1.2) {
    std::uniform_int_distribution<std::size_t> nt(1, max_terms);
    css::css_state s;
    s.n_modes = n_modes;
    const std::size_t terms = nt(rng);
    for (std::size_t j = 0; j < terms; ++j) {
      css::term t;
      t.coeff = box(1.0);
      for (std::size_t m = 0; m < n_modes; ++m) t.amps.push_back(box(amp_half));
      s.terms.push_back(std::move(t));
    }
    return s;
  }

  void record(const std::string& name, double deviation, double tolerance,
              std::string detail = {}) {
    checks.push_back({name, deviation <= tolerance, deviation, tolerance,
                      std::move(detail)});
  }
};

// Applies a single-mode operator to one mode of a multimode Fock vector.
// Lives here (not in the fock module) because it is the oracle's own tool:
// the production path never builds per-mode operator products.
fock::fock_vector apply_mode(const fock::fock_operator& op, const fock::fock_vector& v,
                             std::size_t mode) {
  const std::size_t d = v.cutoff;
  std::size_t stride = 1;
  for (std::size_t m = mode + 1; m < v.n_modes; ++m) stride *= d;
  fock::fock_vector out = v;
  out.amps.setZero();
  const std::size_t total = static_cast<std::size_t>(v.amps.size());
  const std::size_t block = d * stride;
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t r = 0; r < stride; ++r)
      for (std::size_t i = 0; i < d; ++i) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < d; ++k)
          acc += op.mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                 v.amps[static_cast<Eigen::Index>(base + r + k * stride)];
        out.amps[static_cast<Eigen::Index>(base + r + i * stride)] = acc;
      }
  return out;
}

double max_component_dev(const fock::fock_vector& a, const fock::fock_vector& b) {
  return (a.amps - b.amps).cwiseAbs().maxCoeff();
}

// Relative distance ||a - b|| / max(||a||, ||b||, 1) between CSS states.
double state_distance(const css::css_state& a, const css::css_state& b) {
  const css::css_state diff = css::add(a, css::scale(b, cplx{-1.0, 0.0}));
  const double scale = std::max({css::norm(a), css::norm(b), 1.0});
  return css::norm(diff) / scale;
}

void check_overlap(suite& st) {
  const std::vector<std::pair<cplx, cplx>> fixed = {
      {{0, 0}, {0, 0}}, {{0, 0}, {2, 0}}, {{2, 0}, {0, 0}},   {{1, -1}, {-1, 1}},
      {{2, 0}, {0, 2}}, {{1.5, 0.5}, {1.5, 0.5}}, {{-2, 0}, {2, 0}}};
  double dev = 0.0;
  auto probe = [&dev](cplx a, cplx b) {
    const cplx lhs = css::coherent_overlap(a, b);
    const cplx rhs = fock::inner(fock::coherent_fock(a, kCut), fock::coherent_fock(b, kCut));
    dev = std::max(dev, std::abs(lhs - rhs));
  };
  for (auto [a, b] : fixed) probe(a, b);
  for (int i = 0; i < 20; ++i) probe(st.box(1.4), st.box(1.4));
  st.record("overlap.fock", dev, 1e-8, "27 amplitude pairs, cutoff 40");
}

void check_displace(suite& st) {
  double dev1 = 0.0, devm = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t nm = 1 + rep % 3;
    const css::css_state s = st.random_state(nm, 4);
    const auto v = fock::css_to_fock(s, kCut);
    // single-mode form. Shift sizes stay below ~0.5 so the truncated
    // displacement passes its own half-block unitarity guard at this cutoff.
    const std::size_t mode = rep % nm;
    const cplx chi = st.box(0.35);
    const auto got = fock::css_to_fock(css::displace(s, mode, chi), kCut);
    const auto want = apply_mode(fock::displacement_matrix(chi, kCut), v, mode);
    dev1 = std::max(dev1, max_component_dev(got, want));
    // all-modes selection form
    css::mode_selection sel;
    std::vector<cplx> shifts;
    for (std::size_t m = 0; m < nm; ++m) {
      sel.modes.push_back(m);
      shifts.push_back(st.box(0.35));
    }
    fock::fock_vector acc = v;
    for (std::size_t m = 0; m < nm; ++m)
      acc = apply_mode(fock::displacement_matrix(shifts[m], kCut), acc, m);
    const auto gotm = fock::css_to_fock(css::displace(s, sel, shifts), kCut);
    devm = std::max(devm, max_component_dev(gotm, acc));
  }
  st.record("displace.single.fock", dev1, 1e-8, "6 random states, 1-3 modes");
  st.record("displace.multi.fock", devm, 1e-8, "6 random states, all-mode shifts");
}

void check_project(suite& st) {
  double dev = 0.0;
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t nm = 1 + rep % 3;
    const css::css_state s = st.random_state(nm, 4);
    const std::size_t mode = (rep * 2) % nm;
    const cplx gamma = st.box(1.2);
    css::mode_selection sel{{mode}};
    const auto got = fock::css_to_fock(css::project_coherent(s, sel, {gamma}), kCut);
    const auto g = fock::coherent_fock(gamma, kCut);
    const auto want = apply_mode(fock::rank_one(g, g), fock::css_to_fock(s, kCut), mode);
    dev = std::max(dev, max_component_dev(got, want));
  }
  st.record("project.fock", dev, 1e-8, "coherent projector vs rank-one matrix");
}

void check_postselect(suite& st) {
  double dev = 0.0;
  for (int rep = 0; rep < 8; ++rep) {
    const std::size_t nm = 2 + rep % 2;  // 2 or 3 modes
    const css::css_state s = st.random_state(nm, 4);
    const std::size_t drop = rep % nm;
    css::mode_selection sel{{drop}};
    const cplx outcome = st.box(1.2);
    const css::css_state survivor = css::postselect(s, sel, {outcome});
    const css::css_state probe = st.random_state(nm - 1, 3);
    // embed the probe back: outcome at the measured slot, probe amps elsewhere
    css::css_state embedded;
    embedded.n_modes = nm;
    for (const auto& t : probe.terms) {
      css::term et;
      et.coeff = t.coeff;
      std::size_t src = 0;
      for (std::size_t m = 0; m < nm; ++m)
        et.amps.push_back(m == drop ? outcome : t.amps[src++]);
      embedded.terms.push_back(std::move(et));
    }
    const cplx lhs = css::inner(probe, survivor);
    const cplx rhs = css::inner(embedded, s);
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  st.record("postselect.embed", dev, 1e-12, "<r|<g|s>> == <g x r|s>");
}

void check_compress_serialize(suite& st) {
  double dev = 0.0;
  std::size_t bit_mismatch = 0;
  for (int rep = 0; rep < 6; ++rep) {
    css::css_state s = st.random_state(2, 4);
    // near-duplicate amplitudes so compress actually merges something
    if (s.terms.size() >= 2) {
      s.terms[1].amps = s.terms[0].amps;
      s.terms[1].amps[0] += cplx{3e-15, -2e-15};
    }
    const css::css_state c = css::compress(s);
    const css::css_state probe = st.random_state(2, 3);
    dev = std::max(dev, std::abs(css::inner(probe, c) - css::inner(probe, s)));

    css::css_state big = s;
    big.terms[0].amps[0] = cplx{1e7, 0.5};  // extreme magnitude round trip
    const css::css_state back = css::deserialize(css::serialize(big));
    if (back.n_modes != big.n_modes || back.terms.size() != big.terms.size()) {
      ++bit_mismatch;
      continue;
    }
    for (std::size_t j = 0; j < big.terms.size(); ++j) {
      auto differs = [](cplx a, cplx b) {
        return std::memcmp(&a, &b, sizeof(cplx)) != 0;
      };
      if (differs(back.terms[j].coeff, big.terms[j].coeff)) ++bit_mismatch;
      for (std::size_t m = 0; m < big.n_modes; ++m)
        if (differs(back.terms[j].amps[m], big.terms[j].amps[m])) ++bit_mismatch;
    }
  }
  st.record("compress.invariance", dev, 1e-12, "inner products preserved");
  st.record("serialize.roundtrip", static_cast<double>(bit_mismatch), 0.0,
            "bit-exact incl. 1e7 amplitudes");
}

dipole::dipole_waveform reference_waveform() {
  dipole::dipole_spec spec;
  spec.k = dipole::dipole_spec::kind::enveloped;
  spec.components = {{1, 1.0}, {3, 0.4}};
  spec.cycles = 4;
  spec.samples_per_cycle = 48;
  const double period = 2.0 * std::numbers::pi;
  spec.envelope_center = 2.0 * period;
  spec.envelope_width = period;
  return dipole::synth_dipole(spec);
}

void check_dipole(suite& st) {
  // Single-cosine comb over whole periods: chi_q0 has the closed form
  // -i sqrt(q0) kappa A T / 2 and every other order vanishes by discrete
  // orthogonality of the trapezoid sum.
  dipole::dipole_spec spec;
  spec.k = dipole::dipole_spec::kind::comb;
  spec.components = {{3, 0.8}};
  spec.cycles = 6;
  spec.samples_per_cycle = 64;
  const auto w = dipole::synth_dipole(spec);
  const double kappa = 0.02;
  const double T = 2.0 * std::numbers::pi * 6.0;
  const cplx want = cplx{0.0, -1.0} * std::sqrt(3.0) * kappa * 0.8 * T / 2.0;
  const cplx got = dipole::mode_shift(w, 3, kappa);
  const double dev_cf = std::abs(got - want) / std::abs(want);
  st.record("dipole.chi.closed_form", dev_cf, 1e-10, "q0=3 cosine, 6 cycles");

  double cross = 0.0;
  for (int q = 1; q <= 5; ++q) {
    if (q == 3) continue;
    cross = std::max(cross, std::abs(dipole::mode_shift(w, q, kappa)) / std::abs(want));
  }
  st.record("dipole.chi.orthogonality", cross, 1e-8, "off-harmonic leakage ratio");

  // Brute-force double trapezoid for the phases, same discretization the
  // O(M) prefix form claims to reproduce.
  const auto wf = reference_waveform();
  const double kap = 0.05;
  double dev_phi = 0.0;
  const std::size_t n = wf.samples.size();
  auto weight = [&](std::size_t i, std::size_t count) {
    return (i == 0 || i + 1 == count) ? wf.dt / 2.0 : wf.dt;
  };
  for (int q = 1; q <= 5; ++q) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double inner_acc = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        const double dt_ij = static_cast<double>(i - j) * wf.dt;
        inner_acc += weight(j, i + 1) * wf.samples[j] * std::sin(q * wf.omega * dt_ij);
      }
      acc += weight(i, n) * wf.samples[i] * inner_acc;
    }
    const double brute = q * kap * kap * acc;
    const double fast = dipole::mode_phase(wf, q, kap);
    dev_phi = std::max(dev_phi, std::abs(fast - brute) /
                                    std::max(1e-30, std::abs(brute)));
  }
  st.record("dipole.phi.oracle", dev_phi, 1e-9, "O(M) vs O(M^2) double loop, q=1..5");
}

void check_channel_povm(suite& st) {
  const auto wf = reference_waveform();
  const auto t = dipole::all_shifts(wf, 4, 0.05);
  const cplx alpha{0.8, 0.3};

  const css::css_state in = st.random_state(t.N, 3);
  const css::css_state out = cond::hhg_channel(in, t);
  const double n_in = css::norm(in);
  st.record("channel.unitary", std::abs(css::norm(out) - n_in) / n_in, 1e-12);

  // The two POVM branches reconstruct the input and their probabilities sum
  // to one on a normalized state.
  css::css_state s = cond::hhg_channel(cond::wavepacket_vacuum(alpha, t.N), t);
  const auto exc = cond::pi_excited(s, alpha);
  const auto vac = cond::pi_vacuum(s, alpha);
  const double recon = state_distance(css::add(exc.state, vac.state), s);
  st.record("povm.reconstruction", recon, 1e-10, "pi_excited + pi_vacuum");
  st.record("povm.probability_sum", std::abs(exc.probability + vac.probability - 1.0),
            1e-12);

  const double p_closed = states::emission_probability(alpha, t);
  st.record("emission.closed_form", std::abs(exc.probability - p_closed), 1e-12);
}

void check_builders(suite& st) {
  const auto wf = reference_waveform();
  const auto t = dipole::all_shifts(wf, 4, 0.05);
  const cplx alpha{0.8, 0.3};

  const auto pipeline = cond::build_phi_hh(alpha, t);
  const auto built = states::build_phi_hh(alpha, t);
  st.record("phi_hh.builder_bitwise",
            css::serialize(pipeline.state) == css::serialize(built.state) ? 0.0 : 1.0,
            0.0, "closed form replays the pipeline arithmetic");

  const double omega = dipole::decoherence_factor(t);
  const double chi1_sq = std::norm(t.chi_of(1));
  const double n2 = css::norm(built.state) * css::norm(built.state);
  const double want = -std::expm1(-(chi1_sq + omega));
  st.record("phi_hh.norm_closed_form", std::abs(n2 - want), 1e-12);

  // psi_omega: fundamental measured at alpha + chi_1.
  {
    css::mode_selection measured{{0}};
    const auto op = cond::quantum_operation(alpha, t, measured, {alpha + t.chi_of(1)});
    const auto b = states::build_psi_omega(alpha, t);
    st.record("psi_omega.builder_bitwise",
              css::serialize(op.state) == css::serialize(b.state) ? 0.0 : 1.0, 0.0);
  }
  // cat: every harmonic measured at its own shift.
  {
    css::mode_selection measured;
    std::vector<cplx> outcomes;
    for (std::size_t q = 2; q <= t.N; ++q) {
      measured.modes.push_back(q - 1);
      outcomes.push_back(t.chi_of(q));
    }
    const auto op = cond::quantum_operation(alpha, t, measured, outcomes);
    const auto b = states::build_cat(alpha, t);
    st.record("cat.builder_bitwise",
              css::serialize(op.state) == css::serialize(b.state) ? 0.0 : 1.0, 0.0);

    const double n2c = css::norm(b.state) * css::norm(b.state);
    const double cf = 1.0 - std::exp(-chi1_sq - omega) * (2.0 - std::exp(-omega));
    st.record("cat.norm_closed_form", std::abs(n2c - cf), 1e-12);
  }
}

void check_operators(suite& st) {
  // harmonics_measured: N = 2 table with nonzero phases, off-canonical
  // post-selection point, applied to the fundamental space.
  const auto t2 = dipole::table_from_values(0.05, 1.0, {cplx{0.5, -0.2}, cplx{0.3, 0.4}},
                                            {0.11, -0.07});
  const cplx alpha{0.5, 0.0};
  const cplx away = t2.chi_of(2) + cplx{0.1, -0.05};
  const auto m = cond::make_measurement_operator(alpha, t2,
                                                 cond::operator_variant::harmonics_measured,
                                                 {away});

  // Defining property: M acting on the input fundamental reproduces the full
  // channel + post-selection pipeline, including the overall scale.
  const css::css_state in_fund = css::product_state(1.0, {alpha});
  const css::css_state via_op = cond::apply_operator(m, in_fund);
  css::mode_selection harmonics{{1}};
  const auto via_pipe = cond::quantum_operation(alpha, t2, harmonics, {away});
  st.record("operator.harmonics.pipeline", state_distance(via_op, via_pipe.state), 1e-10);
  const double p_op = css::norm(via_op) * css::norm(via_op);
  st.record("operator.harmonics.probability",
            std::abs(p_op - via_pipe.probability) / std::max(via_pipe.probability, 1e-300),
            1e-10);

  // Dense-matrix oracle: M = scale (1 - c |ket><bra|) D(chi) on arbitrary input.
  {
    const std::size_t cut = 48;
    const auto d = fock::displacement_matrix(m.displacements[0], cut);
    Eigen::MatrixXcd mat = m.scale * d.mat;
    if (m.correction) {
      const auto ket = fock::coherent_fock(m.correction->ket_amps[0], cut);
      const auto bra = fock::coherent_fock(m.correction->bra_amps[0], cut);
      mat -= (m.scale * m.correction->c) * (ket.amps * (bra.amps.adjoint() * d.mat));
    }
    double dev = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      const css::css_state s = st.random_state(1, 3);
      const auto got = fock::css_to_fock(cond::apply_operator(m, s), cut);
      fock::fock_vector want = fock::css_to_fock(s, cut);
      want.amps = (mat * want.amps).eval();
      dev = std::max(dev, max_component_dev(got, want));
    }
    st.record("operator.apply.fock", dev, 1e-8, "dense 48-level matrix oracle");

    const auto e = cond::effect_matrix(m, cut);
    const auto evs = fock::hermitian_eigenvalues(e);
    const double lmin = evs.front();
    st.record("effect.positive", std::max(0.0, -lmin), 1e-10, "min eigenvalue");

    double pdev = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      const css::css_state s = st.random_state(1, 3);
      const auto v = fock::css_to_fock(s, cut);
      const double via_e = (v.amps.adjoint() * e.mat * v.amps).value().real();
      const css::css_state ms = cond::apply_operator(m, s);
      const double via_n = css::norm(ms) * css::norm(ms);
      pdev = std::max(pdev, std::abs(via_e - via_n) / std::max(via_n, 1e-300));
    }
    st.record("effect.probability", pdev, 1e-8, "<s|E|s> vs ||M s||^2");
  }

  // fundamental_measured on a 3-mode table: operator lives on the two
  // harmonic modes; defining input is the harmonic vacuum.
  const auto t3 = dipole::table_from_values(
      0.05, 1.0, {cplx{0.4, 0.1}, cplx{-0.2, 0.3}, cplx{0.15, -0.25}}, {0.05, -0.02, 0.08});
  const cplx gamma_tilde = alpha + t3.chi_of(1) + cplx{-0.15, 0.1};
  const auto mf = cond::make_measurement_operator(
      alpha, t3, cond::operator_variant::fundamental_measured, {gamma_tilde});
  const css::css_state vac2 = css::vacuum(2);
  const css::css_state via_opf = cond::apply_operator(mf, vac2);
  css::mode_selection fund{{0}};
  const auto via_pipef = cond::quantum_operation(alpha, t3, fund, {gamma_tilde});
  st.record("operator.fundamental.pipeline", state_distance(via_opf, via_pipef.state),
            1e-10);
}

void check_photon_entropy(suite& st) {
  double dev_mean = 0.0, dev_var = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t nm = 1 + rep % 2;
    const css::css_state s = st.random_state(nm, 4);
    const std::size_t mode = rep % nm;
    const auto r = analysis::photon_stats(s, mode);
    auto v = fock::css_to_fock(s, kCut);
    v.amps /= v.amps.norm();
    const auto nv = apply_mode(fock::number_operator(kCut), v, mode);
    const double mean = fock::inner(v, nv).real();
    const double second = fock::inner(nv, nv).real();  // <N^2> since N is Hermitian
    dev_mean = std::max(dev_mean, std::abs(r.mean - mean));
    dev_var = std::max(dev_var, std::abs(r.variance - (second - mean * mean)));
  }
  st.record("photon.mean.fock", dev_mean, 1e-8);
  st.record("photon.variance.fock", dev_var, 1e-8);

  double dev_ent = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const css::css_state s = st.random_state(2, 4);
    css::mode_selection keep{{0}};
    const auto rep_g = analysis::entanglement_entropy(s, keep);
    auto v = fock::css_to_fock(s, kCut);
    v.amps /= v.amps.norm();
    const double want = fock::entropy_of(fock::partial_trace(v, keep));
    dev_ent = std::max(dev_ent, std::abs(rep_g.entropy - want));
  }
  st.record("entropy.gram_vs_fock", dev_ent, 1e-6, "5 random 2-mode states");

  // chi_1 = 0 leaves the fundamental in a product with the harmonics.
  const auto t = dipole::table_from_values(0.05, 1.0,
                                           {cplx{0.0, 0.0}, cplx{0.0, 0.3}, cplx{0.2, 0.0}});
  const auto hh = states::build_phi_hh(cplx{0.9, -0.4}, t);
  css::mode_selection keep{{0}};
  st.record("entropy.zero_when_chi1_zero",
            analysis::entanglement_entropy(hh.state, keep).entropy, 1e-9);

  // Schmidt spectrum is invariant under displacing the fundamental input.
  const auto ta = dipole::table_from_values(
      0.05, 1.0, {cplx{0.6, 0.2}, cplx{0.1, -0.3}, cplx{-0.2, 0.15}});
  const auto a1 = analysis::entanglement_entropy(states::build_phi_hh(cplx{0.3, 0.1}, ta).state, keep);
  const auto a2 = analysis::entanglement_entropy(states::build_phi_hh(cplx{5.3, -2.1}, ta).state, keep);
  st.record("entropy.alpha_invariance", std::abs(a1.entropy - a2.entropy), 1e-8);
}

void check_wigner(suite& st) {
  // Pointwise against the parity-operator definition. 128 levels: the oracle
  // displaces by up to |gamma| ~ 1.1 and the half-block unitarity guard needs
  // generous headroom above the displaced-state turning point.
  css::css_state s;
  s.n_modes = 1;
  s.terms.push_back({cplx{0.7, 0.1}, {cplx{0.9, 0.4}}});
  s.terms.push_back({cplx{-0.4, 0.55}, {cplx{-0.8, -0.3}}});
  phase_grid g;
  g.center = cplx{0.2, -0.1};
  g.radius = 0.6;
  g.step = 0.2;
  const phase_grid w = analysis::wigner(s, g);
  const auto v = fock::css_to_fock(s, 128);
  const std::size_t n = grid_axis_points(w);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; i += 2)
    for (std::size_t j = 0; j < n; j += 2) {
      const cplx gamma = g.center + cplx{grid_axis_offset(w, i), grid_axis_offset(w, j)};
      dev = std::max(dev, std::abs(w.values[i * n + j] - fock::wigner_point(v, gamma)));
    }
  st.record("wigner.pointwise.fock", dev, 1e-6, "4x4 subgrid, parity-operator oracle");

  // Integral over a wide grid equals <s|s>.
  phase_grid wide;
  wide.center = cplx{0.0, 0.0};
  wide.radius = 6.0;
  wide.step = 0.25;
  const phase_grid ww = analysis::wigner(s, wide);
  const std::size_t nw = grid_axis_points(ww);
  double integral = 0.0;
  for (std::size_t i = 0; i < nw; ++i)
    for (std::size_t j = 0; j < nw; ++j)
      integral += grid_axis_weight(ww, i) * grid_axis_weight(ww, j) * ww.values[i * nw + j];
  const double n2 = css::inner(s, s).real();
  st.record("wigner.normalization", std::abs(integral - n2) / n2, 1e-4);

  // Serial and parallel scans must agree bit for bit.
  const phase_grid wp = analysis::wigner(s, wide, exec_policy::parallel);
  std::size_t mism = 0;
  for (std::size_t k = 0; k < ww.values.size(); ++k)
    if (std::memcmp(&ww.values[k], &wp.values[k], sizeof(double)) != 0) ++mism;
  st.record("wigner.policy_bitwise", static_cast<double>(mism), 0.0);
}

void check_w_limit(suite& st) {
  // Fidelity of the single-photon truncation against the exact conditioned
  // state, at two coupling scales; the infidelity must shrink ~ eps^2.
  auto table_at = [](double eps) {
    return dipole::table_from_values(
        eps, 1.0,
        {cplx{0.0, 0.3} * eps, cplx{0.9, 0.0} * eps, cplx{0.0, -0.7} * eps,
         cplx{0.35, 0.35} * eps});
  };
  auto fidelity_at = [&](double eps, bool* guard) {
    const auto t = table_at(eps);
    const auto w = states::w_limit(t, {2, 3, 4}, guard);
    const auto psi = states::build_psi_omega(cplx{0.0, 0.0}, t);
    const auto psi_fock = fock::css_to_fock(psi.state, 8);
    return analysis::fidelity(fock::pad(w, 8), psi_fock);
  };
  bool guard_small = true, guard_large = true;
  const double f_small = fidelity_at(0.01, &guard_small);
  const double f_large = fidelity_at(0.1, &guard_large);
  st.record("w_limit.fidelity_small_eps", 1.0 - f_small, 1e-3,
            "F = " + num::fmt(f_small));
  const double ratio = (1.0 - f_large) / (1.0 - f_small);
  const double ratio_dev = (ratio >= 50.0 && ratio <= 200.0) ? 0.0 : ratio;
  st.record("w_limit.deficit_scaling", ratio_dev, 100.0,
            "infidelity ratio " + num::fmt(ratio) + ", guard flags " +
                (guard_small ? "ok" : "tripped") + "/" +
                (guard_large ? "ok" : "tripped"));
}

void check_completeness(suite& st) {
  const cplx alpha{0.6, 0.2};
  const cplx chi{0.4, -0.3};
  auto dev_at = [&](double step) {
    phase_grid g;
    g.center = cplx{0.0, 0.0};
    g.radius = 6.4;
    g.step = step;
    return cond::completeness_check(alpha, chi, 16, g);
  };
  const double d_coarse = dev_at(1.6);
  const double d_fine = dev_at(0.8);
  st.record("completeness.converges", d_fine, 1e-3,
            "deviation " + num::fmt(d_coarse) + " -> " + num::fmt(d_fine));
  st.record("completeness.monotone", d_fine < d_coarse ? 0.0 : 1.0, 0.0);
}

}  // namespace

verification_report run_verification() {
  suite st;
  check_overlap(st);
  check_displace(st);
  check_project(st);
  check_postselect(st);
  check_compress_serialize(st);
  check_dipole(st);
  check_channel_povm(st);
  check_builders(st);
  check_operators(st);
  check_photon_entropy(st);
  check_wigner(st);
  check_w_limit(st);
  check_completeness(st);

  verification_report r;
  r.checks = std::move(st.checks);
  r.all_passed = std::all_of(r.checks.begin(), r.checks.end(),
                             [](const check_result& c) { return c.passed; });
  return r;
}

std::string format_report(const verification_report& r) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& c : r.checks) {
    out += c.passed ? "[PASS] " : "[FAIL] ";
    out += c.name + ": deviation " + num::fmt(c.deviation) + " tolerance " +
           num::fmt(c.tolerance);
    if (!c.detail.empty()) out += " (" + c.detail + ")";
    out += "\n";
    if (c.passed) ++passed;
  }
  out += "summary: " + std::to_string(passed) + "/" + std::to_string(r.checks.size()) +
         " checks passed\n";
  return out;
}

}  // namespace hhq::verify
