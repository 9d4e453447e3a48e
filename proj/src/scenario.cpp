#include "hhq/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "hhq/analysis.hpp"
#include "hhq/conditioning.hpp"
#include "hhq/css.hpp"
#include "hhq/io.hpp"
#include "hhq/numio.hpp"
#include "hhq/states.hpp"
#include "hhq/verify.hpp"

namespace hhq::scenario {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error("config: " + msg); }

void require_object(const njson& j, const std::string& ctx) {
    if (!j.is_object()) fail(ctx + " must be an object");
}

// Strict schema: every present key must be in `allowed`.
void check_keys(const njson& j, const std::string& ctx,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) {
                known = true;
                break;
            }
        if (!known) fail("unknown key '" + item.key() + "' in " + ctx);
    }
}

double as_num(const njson& j, const std::string& ctx) {
    if (!j.is_number()) fail(ctx + " must be a number");
    return j.get<double>();
}

long long as_int(const njson& j, const std::string& ctx) {
    if (!j.is_number_integer()) fail(ctx + " must be an integer");
    return j.get<long long>();
}

std::string as_str(const njson& j, const std::string& ctx) {
    if (!j.is_string()) fail(ctx + " must be a string");
    return j.get<std::string>();
}

cplx as_cplx(const njson& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2) fail(ctx + " must be a [re, im] pair");
    return {as_num(j[0], ctx + "[0]"), as_num(j[1], ctx + "[1]")};
}

dipole::dipole_spec parse_dipole(const njson& j) {
    require_object(j, "dipole");
    check_keys(j, "dipole",
               {"kind", "q", "amplitude", "components", "cycles", "samples_per_cycle",
                "omega", "envelope_center", "envelope_width"});
    dipole::dipole_spec spec;
    if (!j.contains("kind")) fail("dipole.kind is required");
    const std::string kind = as_str(j.at("kind"), "dipole.kind");
    if (kind == "monochromatic")
        spec.k = dipole::dipole_spec::kind::monochromatic;
    else if (kind == "comb")
        spec.k = dipole::dipole_spec::kind::comb;
    else if (kind == "enveloped")
        spec.k = dipole::dipole_spec::kind::enveloped;
    else
        fail("dipole.kind must be monochromatic, comb or enveloped");

    if (spec.k == dipole::dipole_spec::kind::monochromatic) {
        if (j.contains("components")) fail("dipole.components: use q/amplitude for monochromatic");
        if (!j.contains("amplitude")) fail("dipole.amplitude is required");
        dipole::comb_component c;
        c.q = j.contains("q") ? static_cast<int>(as_int(j.at("q"), "dipole.q")) : 1;
        c.amp = as_num(j.at("amplitude"), "dipole.amplitude");
        spec.components = {c};
    } else {
        if (j.contains("q") || j.contains("amplitude"))
            fail("dipole.q/amplitude: use components for comb or enveloped");
        if (!j.contains("components") || !j.at("components").is_array() ||
            j.at("components").empty())
            fail("dipole.components must be a non-empty array of [q, amplitude] pairs");
        for (const auto& e : j.at("components")) {
            if (!e.is_array() || e.size() != 2)
                fail("dipole.components entries must be [q, amplitude] pairs");
            dipole::comb_component c;
            c.q = static_cast<int>(as_int(e[0], "dipole.components[].q"));
            c.amp = as_num(e[1], "dipole.components[].amplitude");
            spec.components.push_back(c);
        }
    }
    if (!j.contains("cycles")) fail("dipole.cycles is required");
    spec.cycles = static_cast<int>(as_int(j.at("cycles"), "dipole.cycles"));
    if (!j.contains("samples_per_cycle")) fail("dipole.samples_per_cycle is required");
    spec.samples_per_cycle =
        static_cast<int>(as_int(j.at("samples_per_cycle"), "dipole.samples_per_cycle"));
    if (j.contains("omega")) spec.omega = as_num(j.at("omega"), "dipole.omega");
    const bool env = spec.k == dipole::dipole_spec::kind::enveloped;
    if (j.contains("envelope_center") != env || j.contains("envelope_width") != env)
        fail("envelope_center/envelope_width are required exactly for kind enveloped");
    if (env) {
        spec.envelope_center = as_num(j.at("envelope_center"), "dipole.envelope_center");
        spec.envelope_width = as_num(j.at("envelope_width"), "dipole.envelope_width");
    }
    return spec;
}

dipole::shift_table parse_shifts(const njson& j) {
    require_object(j, "shifts");
    check_keys(j, "shifts", {"kappa", "omega", "chi", "phi"});
    if (!j.contains("kappa") || !j.contains("chi")) fail("shifts needs kappa and chi");
    const double kappa = as_num(j.at("kappa"), "shifts.kappa");
    const double omega = j.contains("omega") ? as_num(j.at("omega"), "shifts.omega") : 1.0;
    if (!j.at("chi").is_array() || j.at("chi").empty())
        fail("shifts.chi must be a non-empty array of [re, im] pairs");
    std::vector<cplx> chi;
    for (const auto& e : j.at("chi")) chi.push_back(as_cplx(e, "shifts.chi[]"));
    std::vector<double> phi;
    if (j.contains("phi")) {
        if (!j.at("phi").is_array() || j.at("phi").size() != chi.size())
            fail("shifts.phi must be an array matching shifts.chi in length");
        for (const auto& e : j.at("phi")) phi.push_back(as_num(e, "shifts.phi[]"));
    }
    return dipole::table_from_values(kappa, omega, std::move(chi), std::move(phi));
}

phase_grid parse_grid(const njson& j) {
    require_object(j, "grid");
    check_keys(j, "grid", {"center", "radius", "step"});
    if (!j.contains("radius") || !j.contains("step")) fail("grid needs radius and step");
    phase_grid g;
    if (j.contains("center")) g.center = as_cplx(j.at("center"), "grid.center");
    g.radius = as_num(j.at("radius"), "grid.radius");
    g.step = as_num(j.at("step"), "grid.step");
    validate(g);
    return g;
}

}  // namespace

std::string kind_name(kind k) {
    switch (k) {
        case kind::phi_hh: return "phi_hh";
        case kind::psi_omega: return "psi_omega";
        case kind::cat: return "cat";
        case kind::w_limit: return "w_limit";
        case kind::completeness: return "completeness";
        case kind::cutoff_scan: return "cutoff_scan";
        case kind::verify: return "verify";
    }
    return "?";
}

run_config parse_config(const std::string& json_text) {
    njson j;
    try {
        j = njson::parse(json_text);
    } catch (const njson::parse_error& e) {
        fail(std::string("JSON parse error: ") + e.what());
    }
    require_object(j, "top level");
    if (!j.contains("scenario")) fail("scenario key is required");
    const std::string name = as_str(j.at("scenario"), "scenario");

    run_config c;
    if (name == "phi_hh")
        c.scenario = kind::phi_hh;
    else if (name == "psi_omega")
        c.scenario = kind::psi_omega;
    else if (name == "cat")
        c.scenario = kind::cat;
    else if (name == "w_limit")
        c.scenario = kind::w_limit;
    else if (name == "completeness")
        c.scenario = kind::completeness;
    else if (name == "cutoff_scan")
        c.scenario = kind::cutoff_scan;
    else if (name == "verify")
        c.scenario = kind::verify;
    else
        fail("unknown scenario '" + name + "'");

    // Per-scenario allowed key sets (strict).
    const std::initializer_list<const char*> common = {"scenario", "output", "tolerances",
                                                       "execution"};
    auto allow = [&](std::initializer_list<const char*> extra) {
        std::vector<const char*> all(common);
        all.insert(all.end(), extra.begin(), extra.end());
        for (const auto& item : j.items()) {
            bool known = false;
            for (const char* a : all)
                if (item.key() == a) {
                    known = true;
                    break;
                }
            if (!known) fail("key '" + item.key() + "' is not valid for scenario " + name);
        }
    };
    switch (c.scenario) {
        case kind::phi_hh:
            allow({"alpha", "dipole", "dipole_file", "shifts", "shift_file", "kappa",
                   "harmonic_cutoff"});
            break;
        case kind::psi_omega:
            allow({"alpha", "postselect", "dipole", "dipole_file", "shifts", "shift_file",
                   "kappa", "harmonic_cutoff"});
            break;
        case kind::cat:
            allow({"alpha", "postselect", "grid", "dipole", "dipole_file", "shifts",
                   "shift_file", "kappa", "harmonic_cutoff"});
            break;
        case kind::w_limit:
            allow({"alpha", "modes", "dipole", "dipole_file", "shifts", "shift_file",
                   "kappa", "harmonic_cutoff"});
            break;
        case kind::completeness:
            allow({"alpha", "chi", "fock_cutoff", "grid", "refine_steps"});
            break;
        case kind::cutoff_scan:
            allow({"dipole", "dipole_file", "kappa", "cutoffs"});
            break;
        case kind::verify:
            allow({});
            break;
    }

    if (j.contains("alpha")) c.alpha = as_cplx(j.at("alpha"), "alpha");
    if (j.contains("dipole")) c.dip = parse_dipole(j.at("dipole"));
    if (j.contains("dipole_file")) c.dipole_file = as_str(j.at("dipole_file"), "dipole_file");
    if (j.contains("shifts")) c.shifts = parse_shifts(j.at("shifts"));
    if (j.contains("shift_file")) c.shift_file = as_str(j.at("shift_file"), "shift_file");
    if (j.contains("kappa")) c.kappa = as_num(j.at("kappa"), "kappa");
    if (j.contains("harmonic_cutoff")) {
        const long long n = as_int(j.at("harmonic_cutoff"), "harmonic_cutoff");
        if (n < 2) fail("harmonic_cutoff must be >= 2");
        c.harmonic_cutoff = static_cast<std::size_t>(n);
    }
    if (j.contains("postselect")) {
        if (!j.at("postselect").is_array() || j.at("postselect").empty())
            fail("postselect must be a non-empty array of [re, im] pairs");
        std::vector<cplx> ps;
        for (const auto& e : j.at("postselect")) ps.push_back(as_cplx(e, "postselect[]"));
        c.postselect = std::move(ps);
    }
    if (j.contains("modes")) {
        if (!j.at("modes").is_array() || j.at("modes").size() != 3)
            fail("modes must be an array of exactly 3 harmonic orders");
        std::array<std::size_t, 3> m{};
        for (std::size_t i = 0; i < 3; ++i) {
            const long long q = as_int(j.at("modes")[i], "modes[]");
            if (q < 2) fail("modes entries must be harmonic orders >= 2");
            m[i] = static_cast<std::size_t>(q);
        }
        c.modes = m;
    }
    if (j.contains("chi")) c.chi = as_cplx(j.at("chi"), "chi");
    if (j.contains("fock_cutoff")) {
        const long long d = as_int(j.at("fock_cutoff"), "fock_cutoff");
        if (d < 4) fail("fock_cutoff must be >= 4");
        c.fock_cutoff = static_cast<std::size_t>(d);
    }
    if (j.contains("grid")) c.grid = parse_grid(j.at("grid"));
    if (j.contains("refine_steps")) {
        if (!j.at("refine_steps").is_array()) fail("refine_steps must be an array");
        c.refine_steps.clear();
        for (const auto& e : j.at("refine_steps")) {
            const double s = as_num(e, "refine_steps[]");
            if (!(s > 0)) fail("refine_steps entries must be positive");
            c.refine_steps.push_back(s);
        }
    }
    if (j.contains("cutoffs")) {
        if (!j.at("cutoffs").is_array() || j.at("cutoffs").empty())
            fail("cutoffs must be a non-empty array of integers >= 2");
        for (const auto& e : j.at("cutoffs")) {
            const long long n = as_int(e, "cutoffs[]");
            if (n < 2) fail("cutoffs entries must be >= 2");
            c.cutoffs.push_back(static_cast<std::size_t>(n));
        }
        if (!std::is_sorted(c.cutoffs.begin(), c.cutoffs.end()))
            fail("cutoffs must be ascending");
    }
    if (j.contains("output")) c.output_dir = as_str(j.at("output"), "output");
    if (j.contains("tolerances")) {
        const njson& t = j.at("tolerances");
        require_object(t, "tolerances");
        check_keys(t, "tolerances", {"compress", "spacing_rel"});
        if (t.contains("compress")) {
            c.compress_tol = as_num(t.at("compress"), "tolerances.compress");
            if (!(c.compress_tol >= 0)) fail("tolerances.compress must be >= 0");
        }
        if (t.contains("spacing_rel")) {
            c.spacing_rel = as_num(t.at("spacing_rel"), "tolerances.spacing_rel");
            if (!(c.spacing_rel > 0)) fail("tolerances.spacing_rel must be > 0");
        }
    }
    if (j.contains("execution")) {
        const std::string e = as_str(j.at("execution"), "execution");
        if (e == "serial")
            c.policy = exec_policy::serial;
        else if (e == "parallel")
            c.policy = exec_policy::parallel;
        else
            fail("execution must be 'serial' or 'parallel'");
    }

    // Cross-key consistency.
    const int sources = int(c.dip.has_value()) + int(c.dipole_file.has_value()) +
                        int(c.shifts.has_value()) + int(c.shift_file.has_value());
    const bool needs_table = c.scenario == kind::phi_hh || c.scenario == kind::psi_omega ||
                             c.scenario == kind::cat || c.scenario == kind::w_limit;
    if (needs_table) {
        if (sources != 1)
            fail("exactly one of dipole, dipole_file, shifts, shift_file is required");
        const bool waveform = c.dip.has_value() || c.dipole_file.has_value();
        if (waveform && (!c.kappa || !c.harmonic_cutoff))
            fail("kappa and harmonic_cutoff are required with a waveform source");
        if (!waveform && (c.kappa || c.harmonic_cutoff))
            fail("kappa/harmonic_cutoff only apply to waveform sources");
    }
    if (c.scenario == kind::cutoff_scan) {
        if (!c.dip.has_value() && !c.dipole_file.has_value())
            fail("cutoff_scan needs dipole or dipole_file");
        if (!c.kappa) fail("cutoff_scan needs kappa");
        if (c.cutoffs.empty()) fail("cutoff_scan needs cutoffs");
    }
    const bool needs_alpha = c.scenario == kind::phi_hh || c.scenario == kind::psi_omega ||
                             c.scenario == kind::cat || c.scenario == kind::completeness;
    if (needs_alpha && !c.alpha) fail(name + " needs alpha");
    if (c.scenario == kind::completeness && !c.chi) fail("completeness needs chi");
    if (c.scenario == kind::w_limit && !c.modes) fail("w_limit needs modes");
    return c;
}

namespace {

struct resolved_inputs {
    dipole::shift_table table;
    std::optional<dipole::dipole_waveform> wave;
    std::string source;
};

resolved_inputs resolve_table(const run_config& c) {
    resolved_inputs r;
    if (c.shifts) {
        r.table = *c.shifts;
        r.source = "inline shift table";
    } else if (c.shift_file) {
        r.table = io::parse_shift_table(io::read_text_file(*c.shift_file));
        r.source = "shift table file " + *c.shift_file;
    } else {
        if (c.dip) {
            r.wave = dipole::synth_dipole(*c.dip);
            r.source = "synthesized dipole waveform";
        } else {
            r.wave = io::parse_waveform(io::read_text_file(*c.dipole_file), c.spacing_rel);
            r.source = "dipole waveform file " + *c.dipole_file;
        }
        r.table = dipole::all_shifts(*r.wave, *c.harmonic_cutoff, *c.kappa, c.policy);
    }
    return r;
}

// result.txt accumulator: "key value" lines in insertion order.
struct kv_block {
    std::string text;
    void add(const std::string& k, const std::string& v) { text += k + " " + v + "\n"; }
    void add(const std::string& k, double v) { add(k, num::fmt(v)); }
    void add(const std::string& k, cplx v) { add(k, num::fmt(v)); }
    void add(const std::string& k, std::size_t v) { add(k, std::to_string(v)); }
};

void add_table_echo(kv_block& kv, const dipole::shift_table& t) {
    kv.add("kappa", t.kappa);
    kv.add("omega", t.omega);
    kv.add("N", t.N);
    kv.add("Omega", dipole::decoherence_factor(t));
}

void push_manifest(scenario_result& res) {
    std::string m;
    for (const auto& [name, content] : res.files)
        m += io::sha256_hex(content) + "  " + name + "\n";
    res.files.emplace_back("manifest.txt", std::move(m));
}

scenario_result run_phi_hh(const run_config& c) {
    const auto in = resolve_table(c);
    const auto ns = states::build_phi_hh(*c.alpha, in.table);
    const double n2 = css::inner(ns.state, ns.state).real();
    const double chi1_sq = std::norm(in.table.chi_of(1));
    const double omega = dipole::decoherence_factor(in.table);
    kv_block kv;
    kv.add("scenario", std::string("phi_hh"));
    kv.add("alpha", *c.alpha);
    add_table_echo(kv, in.table);
    kv.add("emission_probability", ns.emission_probability);
    kv.add("norm_squared", n2);
    kv.add("closed_form_norm_squared", -std::expm1(-(chi1_sq + omega)));
    kv.add("n_terms", ns.state.terms.size());
    std::string summary = "phi_hh: N=" + std::to_string(in.table.N) +
                          " P(emission)=" + num::fmt(ns.emission_probability);
    if (n2 > 0) {
        css::mode_selection keep{{0}};
        const auto ent = analysis::entanglement_entropy(ns.state, keep);
        kv.add("entropy", ent.entropy);
        kv.add("entropy_bits", ent.entropy_bits);
        for (std::size_t i = 0; i < ent.schmidt_coefficients.size(); ++i)
            kv.add("schmidt_" + std::to_string(i), ent.schmidt_coefficients[i]);
        summary += " entropy=" + num::fmt(ent.entropy);
    }
    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("shift_table.txt", io::format_shift_table(in.table));
    res.files.emplace_back("state_phi_hh.txt", io::format_named_state(ns));
    push_manifest(res);
    res.summary = summary;
    return res;
}

scenario_result run_psi_omega(const run_config& c) {
    const auto in = resolve_table(c);
    if (in.table.N < 3)
        throw precondition_error("psi_omega needs a table with N >= 3 (got N = " +
                                 std::to_string(in.table.N) + ")");
    if (c.postselect && c.postselect->size() != 1)
        throw precondition_error("psi_omega postselect takes exactly one outcome");
    const cplx gamma = c.postselect ? (*c.postselect)[0] : *c.alpha + in.table.chi_of(1);
    states::named_state ns;
    if (c.postselect) {
        css::mode_selection measured{{0}};
        auto out = cond::quantum_operation(*c.alpha, in.table, measured, {gamma},
                                           c.compress_tol);
        ns.label = states::state_label::psi_omega;
        ns.state = std::move(out.state);
        ns.emission_probability = states::emission_probability(*c.alpha, in.table);
        ns.alpha = *c.alpha;
        ns.table = in.table;
    } else {
        ns = states::build_psi_omega(*c.alpha, in.table);
    }
    const double n2 = css::inner(ns.state, ns.state).real();
    kv_block kv;
    kv.add("scenario", std::string("psi_omega"));
    kv.add("alpha", *c.alpha);
    add_table_echo(kv, in.table);
    kv.add("postselect", gamma);
    kv.add("emission_probability", ns.emission_probability);
    kv.add("probability_density", n2);
    kv.add("n_terms", ns.state.terms.size());
    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("shift_table.txt", io::format_shift_table(in.table));
    res.files.emplace_back("state_psi_omega.txt", io::format_named_state(ns));
    push_manifest(res);
    res.summary = "psi_omega: N=" + std::to_string(in.table.N) +
                  " density=" + num::fmt(n2);
    return res;
}

scenario_result run_cat(const run_config& c) {
    const auto in = resolve_table(c);
    if (c.postselect && c.postselect->size() != in.table.N - 1)
        throw precondition_error("cat postselect needs one outcome per harmonic mode (" +
                                 std::to_string(in.table.N - 1) + ")");
    states::named_state ns;
    if (c.postselect) {
        css::mode_selection measured;
        for (std::size_t q = 2; q <= in.table.N; ++q) measured.modes.push_back(q - 1);
        auto out = cond::quantum_operation(*c.alpha, in.table, measured, *c.postselect,
                                           c.compress_tol);
        ns.label = states::state_label::cat;
        ns.state = std::move(out.state);
        ns.emission_probability = states::emission_probability(*c.alpha, in.table);
        ns.alpha = *c.alpha;
        ns.table = in.table;
    } else {
        ns = states::build_cat(*c.alpha, in.table);
    }
    const double n2 = css::inner(ns.state, ns.state).real();
    const double omega = dipole::decoherence_factor(in.table);
    const double chi1_sq = std::norm(in.table.chi_of(1));

    kv_block kv;
    kv.add("scenario", std::string("cat"));
    kv.add("alpha", *c.alpha);
    add_table_echo(kv, in.table);
    kv.add("probability_density", n2);
    kv.add("norm_squared", n2);
    if (!c.postselect)
        kv.add("closed_form_norm_squared",
               1.0 - std::exp(-chi1_sq - omega) * (2.0 - std::exp(-omega)));

    scenario_result res;
    std::string summary = "cat: N=" + std::to_string(in.table.N);
    if (n2 > 0) {
        const css::css_state unit = css::scale(ns.state, cplx{1.0 / std::sqrt(n2), 0.0});
        phase_grid g;
        if (c.grid) {
            g = *c.grid;
        } else {
            g.center = *c.alpha + in.table.chi_of(1) / 2.0;
            g.radius = std::abs(in.table.chi_of(1)) / 2.0 + 5.0;
            g.step = 0.1;
        }
        const phase_grid w = analysis::wigner(unit, g, c.policy);
        const double min_w = *std::min_element(w.values.begin(), w.values.end());
        const double neg = analysis::negativity_volume(w);
        const auto ph = analysis::photon_stats(unit, 0);
        kv.add("min_wigner", min_w);
        kv.add("negativity_volume", neg);
        kv.add("photon_mean", ph.mean);
        kv.add("photon_variance", ph.variance);
        kv.add("grid_center", g.center);
        kv.add("grid_radius", g.radius);
        kv.add("grid_step", g.step);
        res.files.emplace_back("result.txt", kv.text);
        res.files.emplace_back("shift_table.txt", io::format_shift_table(in.table));
        res.files.emplace_back("state_cat.txt", io::format_named_state(ns));
        res.files.emplace_back("wigner_cat.txt",
                               io::format_phase_grid(w, "Wigner function, normalized cat"));
        summary += " minW=" + num::fmt(min_w) + " negativity=" + num::fmt(neg);
    } else {
        res.files.emplace_back("result.txt", kv.text);
        res.files.emplace_back("shift_table.txt", io::format_shift_table(in.table));
        res.files.emplace_back("state_cat.txt", io::format_named_state(ns));
        summary += " (zero survivor)";
    }
    push_manifest(res);
    res.summary = summary;
    return res;
}

scenario_result run_w_limit(const run_config& c) {
    const auto in = resolve_table(c);
    // Ascending order throughout: the truncation slots and the conditioned
    // comparison state then share the same mode layout.
    std::array<std::size_t, 3> orders = *c.modes;
    std::sort(orders.begin(), orders.end());
    bool guard_ok = true;
    const auto w = states::w_limit(in.table, orders, &guard_ok);
    const double n2 = w.amps.squaredNorm();

    // Comparison target: the exact conditioned state with every harmonic mode
    // outside `orders` additionally post-selected on vacuum.
    const cplx alpha = c.alpha.value_or(cplx{0.0, 0.0});
    const auto psi = states::build_psi_omega(alpha, in.table);
    css::mode_selection others;
    for (std::size_t q = 2; q <= in.table.N; ++q) {
        if (std::find(orders.begin(), orders.end(), q) == orders.end())
            others.modes.push_back(q - 2);
    }
    css::css_state target = psi.state;
    if (!others.modes.empty())
        target = css::postselect(target, others, std::vector<cplx>(others.modes.size()));
    const std::size_t cmp_cutoff = 12;
    const double fid = analysis::fidelity(fock::pad(w, cmp_cutoff),
                                          fock::css_to_fock(target, cmp_cutoff));

    kv_block kv;
    kv.add("scenario", std::string("w_limit"));
    kv.add("alpha", alpha);
    add_table_echo(kv, in.table);
    kv.add("modes", std::to_string(orders[0]) + " " + std::to_string(orders[1]) + " " +
                        std::to_string(orders[2]));
    kv.add("guard_ok", std::string(guard_ok ? "1" : "0"));
    kv.add("norm_squared", n2);
    kv.add("fidelity_vs_conditioned", fid);

    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("shift_table.txt", io::format_shift_table(in.table));
    res.files.emplace_back("state_w_limit.txt",
                           io::format_fock_vector(w, "single-photon limit state"));
    push_manifest(res);
    res.summary = "w_limit: fidelity=" + num::fmt(fid) +
                  (guard_ok ? "" : " (validity guard tripped)");
    return res;
}

scenario_result run_completeness(const run_config& c) {
    phase_grid g;
    if (c.grid) {
        g = *c.grid;
    } else {
        g.center = cplx{0.0, 0.0};
        g.radius = std::abs(*c.chi) + 6.0;
        g.step = 0.05;
    }
    std::string rows = "# POVM completeness quadrature\n";
    rows += "# alpha " + num::fmt(*c.alpha) + "\n";
    rows += "# chi " + num::fmt(*c.chi) + "\n";
    rows += "# cutoff " + std::to_string(c.fock_cutoff) + "\n";
    rows += "# radius " + num::fmt(g.radius) + "\n";
    double final_dev = 0.0;
    auto eval = [&](double step) {
        phase_grid gg = g;
        gg.step = step;
        const double dev = cond::completeness_check(*c.alpha, *c.chi, c.fock_cutoff, gg,
                                                    c.policy);
        rows += num::fmt(step) + " " + num::fmt(dev) + "\n";
        return dev;
    };
    for (double s : c.refine_steps) eval(s);
    final_dev = eval(g.step);

    kv_block kv;
    kv.add("scenario", std::string("completeness"));
    kv.add("alpha", *c.alpha);
    kv.add("chi", *c.chi);
    kv.add("fock_cutoff", c.fock_cutoff);
    kv.add("grid_radius", g.radius);
    kv.add("grid_step", g.step);
    kv.add("deviation_final", final_dev);

    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("completeness.txt", rows);
    push_manifest(res);
    res.summary = "completeness: deviation=" + num::fmt(final_dev) + " at step " +
                  num::fmt(g.step);
    return res;
}

scenario_result run_cutoff_scan(const run_config& c) {
    dipole::dipole_waveform w;
    if (c.dip)
        w = dipole::synth_dipole(*c.dip);
    else
        w = io::parse_waveform(io::read_text_file(*c.dipole_file), c.spacing_rel);
    const auto rows = analysis::cutoff_scan(w, *c.kappa, c.cutoffs, c.policy);

    std::string scan = "# harmonic cutoff scan\n";
    scan += "# kappa " + num::fmt(*c.kappa) + "\n";
    scan += "# columns: N Omega emission_probability cat_negativity\n";
    for (const auto& r : rows)
        scan += std::to_string(r.N) + " " + num::fmt(r.decoherence) + " " +
                num::fmt(r.emission_probability) + " " + num::fmt(r.cat_negativity) + "\n";

    kv_block kv;
    kv.add("scenario", std::string("cutoff_scan"));
    kv.add("kappa", *c.kappa);
    kv.add("n_rows", rows.size());
    if (!rows.empty()) {
        kv.add("last_N", rows.back().N);
        kv.add("last_Omega", rows.back().decoherence);
        kv.add("last_cat_negativity", rows.back().cat_negativity);
    }
    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("scan.txt", scan);
    push_manifest(res);
    res.summary = "cutoff_scan: " + std::to_string(rows.size()) + " rows";
    return res;
}

scenario_result run_verify() {
    const auto rep = verify::run_verification();
    const std::string report = verify::format_report(rep);
    std::size_t passed = 0;
    for (const auto& ch : rep.checks)
        if (ch.passed) ++passed;

    kv_block kv;
    kv.add("scenario", std::string("verify"));
    kv.add("checks_total", rep.checks.size());
    kv.add("checks_passed", passed);
    kv.add("all_passed", std::string(rep.all_passed ? "1" : "0"));

    scenario_result res;
    res.files.emplace_back("result.txt", kv.text);
    res.files.emplace_back("verify_report.txt", report);
    push_manifest(res);
    res.summary = "verify: " + std::to_string(passed) + "/" +
                  std::to_string(rep.checks.size()) + " checks passed";
    res.verification_failed = !rep.all_passed;
    return res;
}

}  // namespace

std::string describe(const run_config& c) {
    std::string out = "scenario: " + kind_name(c.scenario) + "\n";
    auto table_source = [&]() -> std::string {
        if (c.shifts)
            return "inline shift table (N = " + std::to_string(c.shifts->N) + ")";
        if (c.shift_file) return "shift table file " + *c.shift_file;
        std::string s = c.dip ? "synthesized dipole waveform" : "dipole waveform file " +
                                                                    *c.dipole_file;
        s += ", extract q = 1.." + std::to_string(c.harmonic_cutoff.value_or(0)) +
             " at kappa = " + num::fmt(c.kappa.value_or(0.0));
        return s;
    };
    switch (c.scenario) {
        case kind::phi_hh:
            out += "inputs: alpha = " + num::fmt(*c.alpha) + "; " + table_source() + "\n";
            out += std::string("stages: ") +
                   (c.shifts || c.shift_file ? "shift_table" : "dipole -> shifts") +
                   " -> hhg_channel -> pi_excited\n";
            out += "outputs: result.txt shift_table.txt state_phi_hh.txt manifest.txt\n";
            break;
        case kind::psi_omega:
            out += "inputs: alpha = " + num::fmt(*c.alpha) + "; " + table_source() + "\n";
            out += std::string("stages: ") +
                   (c.shifts || c.shift_file ? "shift_table" : "dipole -> shifts") +
                   " -> hhg_channel -> pi_excited -> postselect\n";
            out += std::string("post-selection: fundamental at ") +
                   (c.postselect ? num::fmt((*c.postselect)[0]) : "alpha + chi_1 (canonical)") +
                   "\n";
            out += "outputs: result.txt shift_table.txt state_psi_omega.txt manifest.txt\n";
            break;
        case kind::cat:
            out += "inputs: alpha = " + num::fmt(*c.alpha) + "; " + table_source() + "\n";
            out += std::string("stages: ") +
                   (c.shifts || c.shift_file ? "shift_table" : "dipole -> shifts") +
                   " -> hhg_channel -> pi_excited -> postselect -> wigner\n";
            out += std::string("post-selection: every harmonic at ") +
                   (c.postselect ? "given outcomes" : "its own shift (canonical)") + "\n";
            out += "analysis: Wigner scan, negativity volume, photon moments\n";
            out += "outputs: result.txt shift_table.txt state_cat.txt wigner_cat.txt "
                   "manifest.txt\n";
            break;
        case kind::w_limit:
            out += "inputs: " + table_source() + "; harmonic orders " +
                   std::to_string((*c.modes)[0]) + "," + std::to_string((*c.modes)[1]) + "," +
                   std::to_string((*c.modes)[2]) + "\n";
            out += "pipeline: single-photon truncation, fidelity against the exact "
                   "conditioned state\n";
            out += "outputs: result.txt shift_table.txt state_w_limit.txt manifest.txt\n";
            break;
        case kind::completeness: {
            out += "inputs: alpha = " + num::fmt(*c.alpha) + ", chi = " + num::fmt(*c.chi) +
                   ", cutoff " + std::to_string(c.fock_cutoff) + "\n";
            phase_grid g;
            g.center = c.grid ? c.grid->center : cplx{0.0, 0.0};
            g.radius = c.grid ? c.grid->radius : std::abs(*c.chi) + 6.0;
            g.step = c.grid ? c.grid->step : 0.05;
            std::size_t total = 0;
            std::string per;
            auto count = [&](double step) {
                phase_grid gg = g;
                gg.step = step;
                const std::size_t axis = grid_axis_points(gg);
                total += axis * axis;
                per += "  step " + num::fmt(step) + ": " + std::to_string(axis) + " x " +
                       std::to_string(axis) + " grid\n";
            };
            for (double s : c.refine_steps) count(s);
            count(g.step);
            out += "quadrature: radius " + num::fmt(g.radius) + " about " +
                   num::fmt(g.center) + ", refinement steps then the final step\n";
            out += per;
            out += "estimated points: " + std::to_string(total) + "\n";
            out += "outputs: result.txt completeness.txt manifest.txt\n";
            break;
        }
        case kind::cutoff_scan:
            out += "inputs: " +
                   std::string(c.dip ? "synthesized dipole waveform" : "dipole waveform file " +
                                                                           *c.dipole_file) +
                   ", kappa = " + num::fmt(*c.kappa) + ", " +
                   std::to_string(c.cutoffs.size()) + " cutoffs\n";
            out += "outputs: result.txt scan.txt manifest.txt\n";
            break;
        case kind::verify:
            out += "runs the full oracle cross-validation suite\n";
            out += "outputs: result.txt verify_report.txt manifest.txt\n";
            break;
    }
    out += "execution: ";
    out += (c.policy == exec_policy::parallel ? "parallel" : "serial");
    out += "\noutput directory: " + c.output_dir + "\n";
    return out;
}

scenario_result execute(const run_config& c) {
    switch (c.scenario) {
        case kind::phi_hh: return run_phi_hh(c);
        case kind::psi_omega: return run_psi_omega(c);
        case kind::cat: return run_cat(c);
        case kind::w_limit: return run_w_limit(c);
        case kind::completeness: return run_completeness(c);
        case kind::cutoff_scan: return run_cutoff_scan(c);
        case kind::verify: return run_verify();
    }
    throw config_error("unreachable scenario kind");
}

}  // namespace hhq::scenario
