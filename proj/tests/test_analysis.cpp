#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <vector>

#include "hhq/analysis.hpp"
#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/states.hpp"
#include "hhq/types.hpp"

using hhq::cplx;
using hhq::phase_grid;
namespace analysis = hhq::analysis;
namespace css = hhq::css;
namespace dipole = hhq::dipole;
namespace fock = hhq::fock;
namespace states = hhq::states;

namespace {

css::css_state kitten(double chi1, double omega_chi, cplx alpha = cplx{0, 0}) {
    const auto t = dipole::table_from_values(0.01, 1.0,
                                             {cplx{chi1, 0}, cplx{omega_chi, 0}});
    auto s = states::build_cat(alpha, t).state;
    return css::scale(s, 1.0 / css::norm(s));
}

}  // namespace

TEST_CASE("coherent-state Wigner function peaks at 2/pi over the label") {
    const cplx alpha{0.7, -0.2};
    const auto s = css::product_state(1.0, {alpha});
    phase_grid g;
    g.center = alpha;
    g.radius = 0.6;
    g.step = 0.2;
    const auto w = analysis::wigner(s, g);
    const std::size_t m = hhq::grid_half_points(g);
    const std::size_t axis = hhq::grid_axis_points(g);
    CHECK(w.values[m * axis + m] ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    // nowhere negative, nowhere above the peak
    for (double v : w.values) {
        CHECK(v >= -1e-15);
        CHECK(v <= 2.0 / std::numbers::pi + 1e-12);
    }
}

TEST_CASE("Wigner integral over a wide grid recovers the squared norm") {
    const auto s = css::product_state(1.0, {cplx{0.3, 0.4}});
    phase_grid g;
    g.center = cplx{0.3, 0.4};
    g.radius = 6.0;
    g.step = 0.25;
    const auto w = analysis::wigner(s, g);
    const std::size_t axis = hhq::grid_axis_points(g);
    double integral = 0.0;
    for (std::size_t i = 0; i < axis; ++i)
        for (std::size_t j = 0; j < axis; ++j)
            integral += hhq::grid_axis_weight(g, i) * hhq::grid_axis_weight(g, j) *
                        w.values[i * axis + j];
    CHECK(std::abs(integral - 1.0) <= 1e-4);
}

TEST_CASE("Wigner scans are bit-identical across execution policies") {
    const auto s = kitten(2.0, 0.1);
    phase_grid g;
    g.center = cplx{1.0, 0};
    g.radius = 1.5;
    g.step = 0.25;
    const auto a = analysis::wigner(s, g, hhq::exec_policy::serial);
    const auto b = analysis::wigner(s, g, hhq::exec_policy::parallel);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(),
                      a.values.size() * sizeof(double)) == 0);
}

TEST_CASE("wigner insists on single-mode input") {
    const auto s = css::vacuum(2);
    phase_grid g;
    g.radius = 1.0;
    g.step = 0.25;
    CHECK_THROWS_AS(analysis::wigner(s, g), hhq::precondition_error);
}

TEST_CASE("superposition interference drives the Wigner function negative") {
    const auto s = kitten(2.0, 0.1);  // chi_1 = 2, Omega = 0.01
    phase_grid g;
    g.center = cplx{1.0, 0.0};
    g.radius = 6.0;
    g.step = 0.1;
    const auto w = analysis::wigner(s, g);
    const double min_w = *std::min_element(w.values.begin(), w.values.end());
    CHECK(min_w < -0.05);
    const double neg = analysis::negativity_volume(w);
    CHECK(neg > 0.01);
}

TEST_CASE("a coherent state carries no negativity volume") {
    const auto s = css::product_state(1.0, {cplx{0.5, 0.5}});
    phase_grid g;
    g.center = cplx{0.5, 0.5};
    g.radius = 6.0;
    g.step = 0.2;
    const auto w = analysis::wigner(s, g);
    CHECK(analysis::negativity_volume(w) <= 1e-12);
    phase_grid empty;
    empty.radius = 1.0;
    empty.step = 0.25;
    CHECK_THROWS_AS(analysis::negativity_volume(empty), hhq::precondition_error);
}

TEST_CASE("real parameters give a Wigner function symmetric about the real axis") {
    const auto s = kitten(1.2, 0.5, cplx{0.4, 0.0});
    phase_grid g;
    g.center = cplx{1.0, 0.0};  // real-axis center keeps the grid mirror-symmetric
    g.radius = 2.0;
    g.step = 0.25;
    const auto w = analysis::wigner(s, g);
    const std::size_t axis = hhq::grid_axis_points(g);
    double dev = 0.0;
    for (std::size_t i = 0; i < axis; ++i)
        for (std::size_t j = 0; j < axis; ++j)
            dev = std::max(dev, std::abs(w.values[i * axis + j] -
                                         w.values[i * axis + (axis - 1 - j)]));
    CHECK(dev <= 1e-8);
}

TEST_CASE("fidelity is 1 on itself, symmetric, and rejects zero norm") {
    const auto a = kitten(1.5, 0.3);
    const auto b = css::product_state(1.0, {cplx{0.2, -0.1}});
    CHECK(analysis::fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(analysis::fidelity(a, b) == doctest::Approx(analysis::fidelity(b, a)).epsilon(1e-12));
    CHECK(analysis::fidelity(a, b) <= 1.0 + 1e-12);
    css::css_state zero;
    zero.n_modes = 1;
    CHECK_THROWS_AS(analysis::fidelity(a, zero), hhq::precondition_error);

    const auto fa = fock::coherent_fock(cplx{0.4, 0}, 24);
    const auto fb = fock::coherent_fock(cplx{-0.1, 0.3}, 24);
    const double f_fock = analysis::fidelity(fa, fb);
    const double f_exact = std::norm(css::coherent_overlap(cplx{0.4, 0}, cplx{-0.1, 0.3}));
    CHECK(f_fock == doctest::Approx(f_exact).epsilon(1e-10));
}

TEST_CASE("photon statistics: vacuum, coherent, and the oracle-checked cat") {
    const auto none = analysis::photon_stats(css::vacuum(1), 0);
    CHECK(none.mean == 0.0);
    CHECK(none.variance == 0.0);
    CHECK_FALSE(none.norm_flagged);

    const cplx beta{1.1, -0.6};
    const auto coh = analysis::photon_stats(css::product_state(1.0, {beta}), 0);
    CHECK(coh.mean == doctest::Approx(std::norm(beta)).epsilon(1e-12));
    CHECK(coh.variance == doctest::Approx(std::norm(beta)).epsilon(1e-12));

    const auto cat = kitten(2.0, 0.1);
    const auto got = analysis::photon_stats(cat, 0);
    const auto v = fock::css_to_fock(cat, 40);
    const auto n_op = fock::number_operator(40);
    const auto nv = fock::apply(n_op, v);
    const double mean = fock::inner(v, nv).real();
    const double second = fock::inner(nv, nv).real();  // <n^2> for diagonal n
    CHECK(std::abs(got.mean - mean) <= 1e-8);
    CHECK(std::abs(got.variance - (second - mean * mean)) <= 1e-8);

    // unnormalized input is flagged but measured on the normalized ray
    const auto scaled = analysis::photon_stats(css::scale(cat, 0.5), 0);
    CHECK(scaled.norm_flagged);
    CHECK(scaled.mean == doctest::Approx(got.mean).epsilon(1e-12));
    CHECK_THROWS_AS(analysis::photon_stats(cat, 1), hhq::precondition_error);
}

TEST_CASE("product states carry no entanglement entropy") {
    const auto s = css::product_state(1.0, {cplx{0.8, 0.1}, cplx{-0.4, 0.6}});
    const auto rep = analysis::entanglement_entropy(s, css::mode_selection{{0}});
    CHECK(std::abs(rep.entropy) <= 1e-10);
    REQUIRE(!rep.schmidt_coefficients.empty());
    CHECK(rep.schmidt_coefficients[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Gram-matrix entropy matches the truncated-Fock partial trace") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{1.0, 0}, cplx{1.0, 0}});
    const cplx alpha{1.0, 0.0};
    auto s = states::build_phi_hh(alpha, t).state;
    s = css::scale(s, 1.0 / css::norm(s));

    const auto rep = analysis::entanglement_entropy(s, css::mode_selection{{0}});
    const auto v = fock::css_to_fock(s, 32);
    const double oracle = fock::entropy_of(fock::partial_trace(v, css::mode_selection{{0}}));
    CHECK(std::abs(rep.entropy - oracle) <= 1e-6);
    CHECK(rep.entropy_bits == doctest::Approx(rep.entropy / std::numbers::ln2).epsilon(1e-12));

    // Schmidt weights: a proper distribution, descending
    double sum = 0.0;
    for (std::size_t i = 0; i < rep.schmidt_coefficients.size(); ++i) {
        sum += rep.schmidt_coefficients[i];
        if (i) CHECK(rep.schmidt_coefficients[i] <= rep.schmidt_coefficients[i - 1]);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));

    // the complementary cut has the same spectrum
    const auto rep2 = analysis::entanglement_entropy(s, css::mode_selection{{1}});
    CHECK(rep2.entropy == doctest::Approx(rep.entropy).epsilon(1e-9));
}

TEST_CASE("entropy bipartitions must be proper nonempty subsets") {
    const auto s = css::vacuum(2);
    CHECK_THROWS_AS(analysis::entanglement_entropy(s, css::mode_selection{{}}),
                    hhq::precondition_error);
    CHECK_THROWS_AS(analysis::entanglement_entropy(s, css::mode_selection{{0, 1}}),
                    hhq::precondition_error);
    CHECK_THROWS_AS(analysis::entanglement_entropy(s, css::mode_selection{{5}}),
                    hhq::precondition_error);
    css::css_state zero;
    zero.n_modes = 2;
    CHECK_THROWS_AS(analysis::entanglement_entropy(zero, css::mode_selection{{0}}),
                    hhq::precondition_error);
}

TEST_CASE("cutoff scans saturate once the comb runs out of harmonics") {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::comb;
    spec.components = {{1, 1.0}, {3, 0.5}, {5, 0.25}, {7, 0.125}};
    spec.cycles = 6;
    spec.samples_per_cycle = 64;
    const auto w = dipole::synth_dipole(spec);
    const auto rows = analysis::cutoff_scan(w, 0.01, {3, 5, 7, 9});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].decoherence < rows[1].decoherence);
    CHECK(rows[1].decoherence < rows[2].decoherence);
    // nothing above order 7 in the drive: Omega freezes
    CHECK(std::abs(rows[3].decoherence - rows[2].decoherence) <=
          1e-12 * rows[2].decoherence);
    for (const auto& r : rows) {
        const double chi1 = std::abs(dipole::mode_shift(w, 1, 0.01));
        CHECK(r.emission_probability ==
              doctest::Approx(1.0 - std::exp(-(chi1 * chi1 + r.decoherence)))
                  .epsilon(1e-10));
        CHECK(r.cat_negativity >= 0.0);
    }
    // decoherence only hurts the interference fringes
    CHECK(rows[0].cat_negativity >= rows[3].cat_negativity);
}

TEST_CASE("cutoff_scan validates its cutoff list") {
    const auto w = dipole::synth_dipole(
        {dipole::dipole_spec::kind::monochromatic, {{1, 1.0}}, 2, 32, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(analysis::cutoff_scan(w, 0.01, {}), hhq::precondition_error);
    CHECK_THROWS_AS(analysis::cutoff_scan(w, 0.01, {5, 3}), hhq::precondition_error);
    CHECK_THROWS_AS(analysis::cutoff_scan(w, 0.01, {1, 2}), hhq::precondition_error);
}
