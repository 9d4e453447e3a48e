#include <chrono>
#include <cstdio>
#include <cstring>
#include <numbers>

#include "hhq/analysis.hpp"
#include "hhq/conditioning.hpp"
#include "hhq/css.hpp"
#include "hhq/dipole.hpp"
#include "hhq/parallel.hpp"
#include "hhq/phase_grid.hpp"

// Serial-vs-OpenMP comparison of the three data-parallel kernels. The serial
// path is the reference implementation the tests pin down; this target shows
// the parallel path computes the same bits and reports the speedup on
// whatever cores the machine has (on a single-core box, expect ~1x).

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   bitwise %s\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms,
                identical ? "match" : "MISMATCH");
}

}  // namespace

int main() {
    using namespace hhq;

    // Wigner scan over a dense grid, three-component superposition.
    {
        css::css_state s;
        s.n_modes = 1;
        s.terms.push_back({cplx{0.6, 0.0}, {cplx{2.0, 0.0}}});
        s.terms.push_back({cplx{-0.55, 0.1}, {cplx{0.0, 0.0}}});
        s.terms.push_back({cplx{0.3, -0.2}, {cplx{-1.0, 1.0}}});
        phase_grid g;
        g.center = cplx{0.5, 0.0};
        g.radius = 6.0;
        g.step = 0.05;
        phase_grid ws, wp;
        const double ts = time_ms([&] { ws = analysis::wigner(s, g, exec_policy::serial); });
        const double tp = time_ms([&] { wp = analysis::wigner(s, g, exec_policy::parallel); });
        const bool same = ws.values.size() == wp.values.size() &&
                          std::memcmp(ws.values.data(), wp.values.data(),
                                      ws.values.size() * sizeof(double)) == 0;
        report("wigner 241x241", ts, tp, same);
    }

    // POVM completeness quadrature (per-point dense matrix products).
    {
        phase_grid g;
        g.center = cplx{0.0, 0.0};
        g.radius = 7.0;
        g.step = 0.2;
        double ds = 0.0, dp = 0.0;
        const double ts = time_ms([&] {
            ds = cond::completeness_check(cplx{1.0, 0.0}, cplx{1.0, 0.0}, 24, g,
                                          exec_policy::serial);
        });
        const double tp = time_ms([&] {
            dp = cond::completeness_check(cplx{1.0, 0.0}, cplx{1.0, 0.0}, 24, g,
                                          exec_policy::parallel);
        });
        report("completeness 71x71", ts, tp, std::memcmp(&ds, &dp, sizeof(double)) == 0);
    }

    // Per-harmonic shift extraction from a long waveform.
    {
        dipole::dipole_spec spec;
        spec.k = dipole::dipole_spec::kind::enveloped;
        spec.components = {{1, 1.0}, {3, 0.5}, {5, 0.25}};
        spec.cycles = 40;
        spec.samples_per_cycle = 320;
        spec.envelope_center = 40.0 * std::numbers::pi;
        spec.envelope_width = 8.0 * std::numbers::pi;
        const auto w = dipole::synth_dipole(spec);
        dipole::shift_table ts_tab, tp_tab;
        const double ts = time_ms([&] { ts_tab = dipole::all_shifts(w, 40, 0.01,
                                                                    exec_policy::serial); });
        const double tp = time_ms([&] { tp_tab = dipole::all_shifts(w, 40, 0.01,
                                                                    exec_policy::parallel); });
        bool same = ts_tab.N == tp_tab.N;
        if (same) {
            same = std::memcmp(ts_tab.chi.data(), tp_tab.chi.data(),
                               ts_tab.chi.size() * sizeof(cplx)) == 0 &&
                   std::memcmp(ts_tab.phi.data(), tp_tab.phi.data(),
                               ts_tab.phi.size() * sizeof(double)) == 0;
        }
        report("all_shifts N=40", ts, tp, same);
    }
    return 0;
}
