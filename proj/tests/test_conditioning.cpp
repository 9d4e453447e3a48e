#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hhq/conditioning.hpp"
#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/types.hpp"

using hhq::cplx;
namespace css = hhq::css;
namespace cond = hhq::cond;
namespace dipole = hhq::dipole;
namespace fock = hhq::fock;

namespace {

dipole::shift_table half_half_table() {
    // |chi_1|^2 = 0.5 and Omega = 0.5
    const double c = std::sqrt(0.5);
    return dipole::table_from_values(0.01, 1.0, {cplx{c, 0.0}, cplx{c, 0.0}});
}

}  // namespace

TEST_CASE("the channel with a null table is the identity, bit for bit") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0, 0}, cplx{0, 0}});
    auto s = css::add(css::product_state(cplx{0.3, 0.7}, {cplx{1.1, 0}, cplx{0, -0.4}}),
                      css::product_state(cplx{-0.2, 0.1}, {cplx{0, 0}, cplx{0.5, 0.5}}));
    const auto out = cond::hhg_channel(s, t);
    CHECK(css::serialize(out) == css::serialize(s));
}

TEST_CASE("the channel is unitary and carries the accumulated phase") {
    const auto t = dipole::table_from_values(0.02, 1.0,
                                             {cplx{0.5, -0.2}, cplx{0.3, 0.4}, cplx{0, 0.1}},
                                             {0.3, 0.4, -0.1});
    auto s = css::add(css::product_state(1.0, {cplx{0.9, 0}, cplx{0, 0}, cplx{0, 0}}),
                      css::product_state(cplx{0, 0.5}, {cplx{0, 0}, cplx{0.2, 0}, cplx{0, 0}}));
    const auto out = cond::hhg_channel(s, t);
    CHECK(css::norm(out) == doctest::Approx(css::norm(s)).epsilon(1e-12));

    // on the multimode vacuum the only coefficient is e^{i sum phi}
    const auto v = cond::hhg_channel(css::vacuum(3), t);
    REQUIRE(v.terms.size() == 1);
    CHECK(std::abs(v.terms[0].coeff - std::polar(1.0, cond::total_phase(t))) <= 1e-15);
    CHECK(cond::total_phase(t) == doctest::Approx(0.6).epsilon(1e-15));

    CHECK_THROWS_AS(cond::hhg_channel(css::vacuum(2), t), hhq::precondition_error);
}

TEST_CASE("wavepacket_vacuum is |alpha> on the fundamental and vacuum elsewhere") {
    const cplx alpha{0.7, -0.3};
    const auto s = cond::wavepacket_vacuum(alpha, 3);
    REQUIRE(s.terms.size() == 1);
    CHECK(s.terms[0].coeff == cplx{1.0, 0.0});
    CHECK(s.terms[0].amps[0] == alpha);
    CHECK(s.terms[0].amps[1] == cplx{0.0, 0.0});
    CHECK(s.terms[0].amps[2] == cplx{0.0, 0.0});
    CHECK_THROWS_AS(cond::wavepacket_vacuum(alpha, 0), hhq::precondition_error);
}

TEST_CASE("excited-wavepacket probability has the closed form 1 - e^{-(x1+Omega)}") {
    const auto t = half_half_table();
    const cplx alpha{0.8, 0.2};
    const auto phi_g = cond::hhg_channel(cond::wavepacket_vacuum(alpha, 2), t);
    const auto exc = cond::pi_excited(phi_g, alpha);
    const auto vac = cond::pi_vacuum(phi_g, alpha);
    const double expect = 1.0 - std::exp(-1.0);
    CHECK(exc.probability == doctest::Approx(expect).epsilon(1e-12));
    CHECK(exc.probability == doctest::Approx(0.6321206).epsilon(1e-6));
    CHECK(vac.probability == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(exc.probability + vac.probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(exc.label == cond::outcome_label::excited);
    CHECK(vac.label == cond::outcome_label::vacuum);
    // the unnormalized survivor squared norm is the probability
    const double n = css::norm(exc.state);
    CHECK(n * n == doctest::Approx(exc.probability).epsilon(1e-12));
}

TEST_CASE("the reference state itself never triggers the excited outcome") {
    const cplx alpha{1.2, -0.5};
    const auto ref = cond::wavepacket_vacuum(alpha, 2);
    const auto vac = cond::pi_vacuum(ref, alpha);
    CHECK(vac.probability == doctest::Approx(1.0).epsilon(1e-12));
    const auto exc = cond::pi_excited(ref, alpha);
    CHECK(exc.probability <= 1e-14);
    CHECK(exc.state.terms.empty());
}

TEST_CASE("two-term entangled survivor: reference coefficient magnitude") {
    const auto t = dipole::table_from_values(
        0.01, 1.0, {cplx{0.6, 0.2}, cplx{0.0, 0.3}, cplx{0.1, 0.0}});
    const cplx alpha{0.4, 0.0};
    const auto out = cond::build_phi_hh(alpha, t);
    REQUIRE(out.state.terms.size() == 2);
    const double x1 = std::norm(t.chi_of(1));
    const double omega = dipole::decoherence_factor(t);
    CHECK(std::abs(out.state.terms[1].coeff) ==
          doctest::Approx(std::exp(-x1 / 2.0) * std::exp(-omega / 2.0)).epsilon(1e-12));
    CHECK(out.probability ==
          doctest::Approx(1.0 - std::exp(-(x1 + omega))).epsilon(1e-12));
}

TEST_CASE("an all-zero table conditions to the zero state") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0, 0}, cplx{0, 0}});
    const auto out = cond::build_phi_hh(cplx{0.9, 0.1}, t);
    CHECK(out.state.terms.empty());
    CHECK(out.probability == 0.0);
    const auto op = cond::quantum_operation(cplx{0.9, 0.1}, t, css::mode_selection{{1}},
                                            {cplx{0, 0}});
    CHECK(op.state.terms.empty());
    CHECK(op.probability == 0.0);
}

TEST_CASE("post-selected operations report the density as the survivor norm") {
    const auto t = dipole::table_from_values(0.02, 1.0,
                                             {cplx{0.5, -0.2}, cplx{0.3, 0.4}},
                                             {0.11, -0.07});
    const cplx alpha{0.6, -0.1};
    const auto out = cond::quantum_operation(alpha, t, css::mode_selection{{1}},
                                             {cplx{0.35, 0.4}});
    const double n = css::norm(out.state);
    CHECK(out.probability == doctest::Approx(n * n).epsilon(1e-12));

    CHECK_THROWS_AS(cond::quantum_operation(alpha, t, css::mode_selection{{}}, {}),
                    hhq::precondition_error);
    CHECK_THROWS_AS(cond::quantum_operation(alpha, t, css::mode_selection{{1}},
                                            {cplx{0, 0}, cplx{0, 0}}),
                    hhq::precondition_error);
    CHECK_THROWS_AS(cond::quantum_operation(alpha, t, css::mode_selection{{0, 1}},
                                            {cplx{0, 0}, cplx{0, 0}}),
                    hhq::precondition_error);
}

TEST_CASE("a bare measurement operator with no correction is the identity map") {
    cond::measurement_operator m;
    m.n_modes = 2;
    m.displacements = {cplx{0, 0}, cplx{0, 0}};
    auto s = css::add(css::product_state(cplx{0.2, -0.4}, {cplx{0.3, 0}, cplx{0, 0.1}}),
                      css::product_state(cplx{1.0, 0.0}, {cplx{0, 0}, cplx{-0.7, 0}}));
    CHECK(css::serialize(cond::apply_operator(m, s)) == css::serialize(s));
}

TEST_CASE("canonical operator parameters for both conditioning geometries") {
    const auto t = dipole::table_from_values(
        0.01, 1.0, {cplx{0.5, -0.2}, cplx{0.3, 0.4}, cplx{0.0, 0.25}});
    const cplx alpha{0.4, 0.3};
    const double omega = dipole::decoherence_factor(t);

    // harmonics measured at their own shifts: survivor is the fundamental
    const auto mh = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::harmonics_measured,
        {t.chi_of(2), t.chi_of(3)});
    REQUIRE(mh.n_modes == 1);
    CHECK(mh.displacements[0] == t.chi_of(1));
    REQUIRE(mh.correction.has_value());
    CHECK(std::abs(mh.correction->c - std::exp(-omega)) <= 1e-14);
    CHECK(mh.correction->bra_amps[0] == alpha);
    CHECK(mh.correction->ket_amps[0] == alpha);
    CHECK(std::abs(mh.scale - cplx{1.0, 0.0}) <= 1e-14);

    // fundamental measured at alpha + chi_1: survivors are the harmonics
    const auto mf = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::fundamental_measured, {alpha + t.chi_of(1)});
    REQUIRE(mf.n_modes == 2);
    CHECK(mf.displacements[0] == t.chi_of(2));
    CHECK(mf.displacements[1] == t.chi_of(3));
    REQUIRE(mf.correction.has_value());
    CHECK(std::abs(mf.correction->c - std::exp(-std::norm(t.chi_of(1)))) <= 1e-14);
}

TEST_CASE("applying the operator reproduces the conditioning pipeline exactly") {
    const auto t = dipole::table_from_values(0.02, 1.0,
                                             {cplx{0.5, -0.2}, cplx{0.3, 0.4}},
                                             {0.11, -0.07});
    const cplx alpha{0.6, -0.1};
    const cplx postsel = t.chi_of(2) + cplx{0.1, -0.05};
    const auto m = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::harmonics_measured, {postsel});
    const auto direct = cond::apply_operator(m, css::product_state(1.0, {alpha}));
    const auto piped = cond::quantum_operation(alpha, t, css::mode_selection{{1}}, {postsel});
    REQUIRE(direct.terms.size() == piped.state.terms.size());
    for (std::size_t i = 0; i < direct.terms.size(); ++i) {
        CHECK(std::abs(direct.terms[i].coeff - piped.state.terms[i].coeff) <= 1e-12);
        CHECK(direct.terms[i].amps[0] == piped.state.terms[i].amps[0]);
    }
}

TEST_CASE("squared output norm equals the effect expectation value") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.4, 0.1}, cplx{0.2, -0.3}});
    const cplx alpha{0.3, 0.2};
    const auto m = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::harmonics_measured, {cplx{0.15, -0.25}});
    const auto s = css::product_state(1.0, {cplx{0.4, -0.1}});
    const auto out = cond::apply_operator(m, s);
    const double n2 = css::norm(out) * css::norm(out);

    const auto E = cond::effect_matrix(m, 32);
    const auto v = fock::css_to_fock(s, 32);
    const cplx expect = v.amps.dot(E.mat * v.amps);  // Eigen dot conjugates the lhs
    CHECK(std::abs(n2 - expect.real()) <= 1e-8 * std::max(1.0, n2));
    CHECK(std::abs(expect.imag()) <= 1e-10);
}

TEST_CASE("effects are positive with spectrum inside [0, 1]") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.5, 0.0}, cplx{0.3, 0.2}});
    const cplx alpha{0.9, 0.0};
    const auto m = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::harmonics_measured, {t.chi_of(2)});
    const auto eigs = fock::hermitian_eigenvalues(cond::effect_matrix(m, 32));
    CHECK(eigs.front() >= -1e-10);
    CHECK(eigs.back() <= 1.0 + 1e-8);
}

TEST_CASE("vanishing decoherence turns the effect into a rank-deficient projector") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.3, 0.0}, cplx{1e-5, 0.0}});
    const cplx alpha{1.0, 0.0};
    const auto m = cond::make_measurement_operator(
        alpha, t, cond::operator_variant::harmonics_measured, {t.chi_of(2)});
    const auto eigs = fock::hermitian_eigenvalues(cond::effect_matrix(m, 32));
    int small = 0;
    for (double l : eigs)
        if (l < 0.5) ++small;
    CHECK(small == 1);
    CHECK(eigs.front() <= 1e-6);
}

TEST_CASE("quadrature over outcomes resolves the identity") {
    const cplx alpha{0.5, 0.0};
    const cplx chi{0.3, 0.0};
    hhq::phase_grid g;
    g.center = cplx{0, 0};
    g.radius = 6.0;
    g.step = 0.4;
    const double coarse = cond::completeness_check(alpha, chi, 16, g);
    g.step = 0.2;
    const double fine = cond::completeness_check(alpha, chi, 16, g);
    CHECK(coarse < 1e-3);
    CHECK(fine < coarse);

    // guards: grid must be centered and big enough for the shifted Gaussians
    g.center = cplx{0.5, 0};
    CHECK_THROWS_AS(cond::completeness_check(alpha, chi, 16, g), hhq::precondition_error);
    g.center = cplx{0, 0};
    g.radius = 2.0;
    CHECK_THROWS_AS(cond::completeness_check(alpha, chi, 16, g), hhq::precondition_error);
}
