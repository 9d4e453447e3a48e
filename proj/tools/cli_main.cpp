#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhq/io.hpp"
#include "hhq/numio.hpp"
#include "hhq/scenario.hpp"
#include "hhq/types.hpp"

namespace {

// --tol name=value overrides, applied after the config file.
void apply_tol_overrides(hhq::scenario::run_config& cfg,
                         const std::vector<std::string>& tols) {
    for (const auto& t : tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw hhq::config_error("--tol expects name=value, got '" + t + "'");
        const std::string name = t.substr(0, eq);
        const double value = hhq::num::parse_double(t.substr(eq + 1));
        if (name == "compress") {
            if (!(value >= 0)) throw hhq::config_error("--tol compress must be >= 0");
            cfg.compress_tol = value;
        } else if (name == "spacing_rel") {
            if (!(value > 0)) throw hhq::config_error("--tol spacing_rel must be > 0");
            cfg.spacing_rel = value;
        } else {
            throw hhq::config_error("unknown tolerance '" + name +
                                    "' (known: compress, spacing_rel)");
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hhqsim: quantum measurement and conditioning in high-harmonic generation"};
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> tol_overrides;
    bool dry_run = false;
    bool run_verify = false;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_flag("--dry-run", dry_run, "print the resolved plan, compute nothing");
    app.add_flag("--verify", run_verify, "run the oracle cross-validation suite");
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    app.add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        hhq::scenario::run_config cfg;
        if (run_verify) {
            if (!config_path.empty())
                throw hhq::config_error("--verify takes no --config (it is its own scenario)");
            cfg.scenario = hhq::scenario::kind::verify;
        } else {
            if (config_path.empty())
                throw hhq::config_error("either --config or --verify is required");
            cfg = hhq::scenario::parse_config(hhq::io::read_text_file(config_path));
        }
        apply_tol_overrides(cfg, tol_overrides);
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        if (dry_run) {
            std::fputs(hhq::scenario::describe(cfg).c_str(), stdout);
            return 0;
        }

        const auto result = hhq::scenario::execute(cfg);
        std::filesystem::create_directories(cfg.output_dir);
        for (const auto& [name, content] : result.files) {
            const std::string path = cfg.output_dir + "/" + name;
            hhq::io::write_text_file(path, content);
            std::printf("wrote %s\n", path.c_str());
        }
        std::printf("%s\n", result.summary.c_str());
        if (result.verification_failed) return 4;
        return 0;
    } catch (const hhq::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const hhq::precondition_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const hhq::guard_error& e) {
        std::fprintf(stderr, "numerical guard: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
