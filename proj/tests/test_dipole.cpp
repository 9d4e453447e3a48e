#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "hhq/dipole.hpp"
#include "hhq/types.hpp"

using hhq::cplx;
namespace dipole = hhq::dipole;

namespace {

dipole::dipole_waveform cosine_wave(int q, int cycles, int spc) {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::monochromatic;
    spec.components = {{q, 1.0}};
    spec.cycles = cycles;
    spec.samples_per_cycle = spc;
    return dipole::synth_dipole(spec);
}

// nested trapezoid, the O(M^2) definition of the phase integral
double brute_phase(const dipole::dipole_waveform& w, int q, double kappa) {
    const std::size_t n = w.samples.size();
    auto weight = [&](std::size_t i, std::size_t count) {
        return (i == 0 || i + 1 == count) ? w.dt / 2.0 : w.dt;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double inner = 0.0;
        for (std::size_t j = 0; j <= i; ++j)
            inner += weight(j, i + 1) * w.samples[j] *
                     std::sin(q * w.omega * static_cast<double>(i - j) * w.dt);
        acc += weight(i, n) * w.samples[i] * inner;
    }
    return q * kappa * kappa * acc;
}

}  // namespace

TEST_CASE("third-harmonic shift of cos(3t) over 8 cycles at kappa = 0.01") {
    const auto w = cosine_wave(3, 8, 64);
    const double T = 16.0 * std::numbers::pi;
    const cplx chi3 = dipole::mode_shift(w, 3, 0.01);
    const cplx closed = cplx{0.0, -1.0} * std::sqrt(3.0) * 0.01 * T / 2.0;
    CHECK(std::abs(chi3 - closed) <= 1e-9 * std::abs(closed));
    CHECK(chi3.imag() == doctest::Approx(-0.43531).epsilon(2e-5));
    CHECK(std::abs(chi3.real()) <= 1e-12);
}

TEST_CASE("whole-period cosine leaks nothing into other orders") {
    const auto w = cosine_wave(3, 8, 64);
    const double ref = std::abs(dipole::mode_shift(w, 3, 0.01));
    for (int q : {1, 2, 4, 5, 6})
        CHECK(std::abs(dipole::mode_shift(w, q, 0.01)) <= 1e-10 * ref);
}

TEST_CASE("mode_phase equals the brute-force double trapezoid") {
    const auto w = cosine_wave(1, 4, 64);
    for (int q = 1; q <= 3; ++q) {
        const double brute = brute_phase(w, q, 0.01);
        const double fast = dipole::mode_phase(w, q, 0.01);
        CHECK(std::abs(fast - brute) <= 1e-6 * std::max(std::abs(brute), 1e-12));
    }
}

TEST_CASE("fundamental phase of a plain cosine approaches -kappa^2 pi") {
    // analytic value of the ordered double integral for cos(t) over 4 periods
    const double kappa = 0.01;
    const auto w = cosine_wave(1, 4, 256);
    const double phi1 = dipole::mode_phase(w, 1, kappa);
    const double analytic = -kappa * kappa * std::numbers::pi;
    CHECK(phi1 == doctest::Approx(analytic).epsilon(1e-3));
}

TEST_CASE("decoherence factor sums harmonic weights only") {
    const auto t = dipole::table_from_values(0.01, 1.0,
                                             {cplx{5.0, 0.0}, cplx{0.3, 0.0}, cplx{0.0, -0.2}});
    CHECK(dipole::decoherence_factor(t) == doctest::Approx(0.09 + 0.04).epsilon(1e-15));
    const auto z = dipole::table_from_values(0.01, 1.0, {cplx{0, 0}, cplx{0, 0}, cplx{0, 0}});
    CHECK(dipole::decoherence_factor(z) == 0.0);
}

TEST_CASE("a waveform with no harmonic content gives zero decoherence") {
    const auto w = cosine_wave(1, 6, 64);
    const auto t = dipole::all_shifts(w, 5, 0.02);
    CHECK(std::abs(t.chi_of(1)) > 0.1);  // the fundamental is loud
    CHECK(dipole::decoherence_factor(t) <= 1e-20);
}

TEST_CASE("all_shifts runs identically under both execution policies") {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::enveloped;
    spec.components = {{1, 1.0}, {3, 0.5}, {5, 0.25}};
    spec.cycles = 6;
    spec.samples_per_cycle = 64;
    spec.envelope_center = 6.0 * std::numbers::pi;
    spec.envelope_width = 2.0 * std::numbers::pi;
    const auto w = dipole::synth_dipole(spec);
    const auto a = dipole::all_shifts(w, 6, 0.01, hhq::exec_policy::serial);
    const auto b = dipole::all_shifts(w, 6, 0.01, hhq::exec_policy::parallel);
    REQUIRE(a.chi.size() == b.chi.size());
    CHECK(std::memcmp(a.chi.data(), b.chi.data(), a.chi.size() * sizeof(cplx)) == 0);
    CHECK(std::memcmp(a.phi.data(), b.phi.data(), a.phi.size() * sizeof(double)) == 0);
}

TEST_CASE("all_shifts insists on at least one harmonic mode") {
    const auto w = cosine_wave(1, 2, 32);
    CHECK_THROWS_AS(dipole::all_shifts(w, 1, 0.01), hhq::precondition_error);
    CHECK_NOTHROW(dipole::all_shifts(w, 2, 0.01));
}

TEST_CASE("synth_dipole names the violated sampling bound") {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::comb;
    spec.components = {{1, 1.0}, {3, 0.5}};
    spec.cycles = 2;
    spec.samples_per_cycle = 16;  // needs >= 8 * 3
    try {
        dipole::synth_dipole(spec);
        FAIL("expected a precondition_error");
    } catch (const hhq::precondition_error& e) {
        CHECK(std::string(e.what()).find("24") != std::string::npos);
    }
    spec.samples_per_cycle = 24;
    CHECK_NOTHROW(dipole::synth_dipole(spec));
    spec.cycles = 0;
    CHECK_THROWS_AS(dipole::synth_dipole(spec), hhq::precondition_error);
}

TEST_CASE("monochromatic means exactly one component") {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::monochromatic;
    spec.components = {{1, 1.0}, {2, 0.5}};
    spec.cycles = 2;
    spec.samples_per_cycle = 32;
    CHECK_THROWS_AS(dipole::synth_dipole(spec), hhq::precondition_error);
}

TEST_CASE("the Gaussian envelope actually suppresses the window edges") {
    dipole::dipole_spec spec;
    spec.k = dipole::dipole_spec::kind::enveloped;
    spec.components = {{1, 1.0}};
    spec.cycles = 4;
    spec.samples_per_cycle = 32;
    spec.envelope_center = 4.0 * std::numbers::pi;  // mid-window
    spec.envelope_width = std::numbers::pi;
    const auto w = dipole::synth_dipole(spec);
    double peak = 0.0;
    for (double v : w.samples) peak = std::max(peak, std::abs(v));
    CHECK(std::abs(w.samples.front()) < 1e-3 * peak);
    CHECK(std::abs(w.samples.back()) < 1e-3 * peak);
}

TEST_CASE("waveform and table validation reject broken input") {
    dipole::dipole_waveform w;
    w.samples = {1.0};
    w.dt = 0.1;
    CHECK_THROWS_AS(dipole::validate(w), hhq::precondition_error);
    w.samples = {1.0, 2.0};
    w.dt = 0.0;
    CHECK_THROWS_AS(dipole::validate(w), hhq::precondition_error);
    w.dt = 0.1;
    w.omega = -1.0;
    CHECK_THROWS_AS(dipole::validate(w), hhq::precondition_error);

    dipole::shift_table t;
    t.N = 2;
    t.chi = {cplx{0, 0}};  // length mismatch
    t.phi = {0.0, 0.0};
    CHECK_THROWS_AS(dipole::validate(t), hhq::precondition_error);
    CHECK_THROWS_AS(dipole::table_from_values(0.01, 1.0, {}), hhq::precondition_error);
}

TEST_CASE("table accessors are 1-based and bounds-checked") {
    const auto t = dipole::table_from_values(0.01, 1.0, {cplx{0.1, 0}, cplx{0.2, 0}},
                                             {0.5, -0.5});
    CHECK(t.chi_of(1) == cplx{0.1, 0.0});
    CHECK(t.chi_of(2) == cplx{0.2, 0.0});
    CHECK(t.phi_of(2) == -0.5);
    CHECK_THROWS_AS(t.chi_of(0), hhq::precondition_error);
    CHECK_THROWS_AS(t.chi_of(3), hhq::precondition_error);
    CHECK_THROWS_AS(t.phi_of(3), hhq::precondition_error);
}
