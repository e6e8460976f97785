#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ambc/harness.hpp"
#include "ambc/io.hpp"
#include "ambc/presets.hpp"
#include "ambc/selfcheck.hpp"
#include "ambc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

void write_closed_form_csv(const std::filesystem::path& path, const ambc::ExperimentSpec& spec,
                           const ambc::BerCurve& curve) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << "snr_db,ber_closed_form\n";
    char line[96];
    for (std::size_t p = 0; p < curve.points.size(); ++p) {
        const ambc::BerPoint& pt = curve.points[p];
        const std::uint64_t trials = pt.bits_tested / spec.bits_per_trial();
        const double ber =
            ambc::closed_form_reference(spec, pt.snr_db, static_cast<std::uint32_t>(p), trials);
        std::snprintf(line, sizeof line, "%.10g,%.10g\n", pt.snr_db, ber);
        out << line;
    }
}

int cmd_run(const std::string& config_path, const std::string& preset_name, const std::string& out_dir,
            bool seed_set, std::uint64_t seed, int threads) {
    std::vector<ambc::PresetEntry> entries;

    if (!preset_name.empty()) {
        const ambc::Preset* preset = ambc::find_preset(preset_name);
        if (!preset) {
            std::cerr << "error: unknown preset '" << preset_name << "' (see list-presets)\n";
            return kExitUsage;
        }
        entries = preset->entries;
        if (!config_path.empty()) {
            const auto kv = ambc::parse_key_values(config_path);
            if (kv.count("scenario")) {
                std::cerr << "error: the scenario is fixed by the preset; drop 'scenario' from the config\n";
                return kExitUsage;
            }
            for (ambc::PresetEntry& e : entries) e.spec = ambc::spec_from_key_values(kv, e.spec);
        }
    } else if (!config_path.empty()) {
        const auto kv = ambc::parse_key_values(config_path);
        if (!kv.count("scenario") || !kv.count("snr_grid_db")) {
            std::cerr << "error: config must set at least 'scenario' and 'snr_grid_db'\n";
            return kExitUsage;
        }
        ambc::PresetEntry e;
        e.spec = ambc::spec_from_key_values(kv, ambc::ExperimentSpec{});
        e.label = ambc::to_string(e.spec.scenario);
        entries.push_back(std::move(e));
    } else {
        std::cerr << "error: need --config and/or --preset\n";
        return kExitUsage;
    }

    for (ambc::PresetEntry& e : entries) {
        if (seed_set) e.spec.system.seed = seed;
        e.spec.validate(/*strict=*/true);
    }

    std::filesystem::create_directories(out_dir);
    for (const ambc::PresetEntry& e : entries) {
        const ambc::BerCurve curve = ambc::run_experiment(e.spec, threads);
        const std::filesystem::path csv = std::filesystem::path(out_dir) / (e.label + ".csv");
        const std::filesystem::path meta = std::filesystem::path(out_dir) / (e.label + ".meta.json");
        ambc::write_curve_csv(csv, curve);
        ambc::write_metadata_json(meta, e.spec, e.label);
        std::cout << "wrote " << csv.string() << "\n";
        if (e.emit_closed_form) {
            const std::filesystem::path theory =
                std::filesystem::path(out_dir) / (e.label + "_closed_form.csv");
            write_closed_form_csv(theory, e.spec, curve);
            std::cout << "wrote " << theory.string() << "\n";
        }
    }
    return kExitOk;
}

int cmd_selfcheck() {
    const ambc::SelfCheckReport report = ambc::run_selfcheck();
    for (const ambc::SelfCheckResult& c : report.checks)
        std::printf("[%s] %-36s worst %.3e (tol %.0e)\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.worst_error, c.tolerance);
    return report.all_passed() ? kExitOk : kExitCheckFailure;
}

int cmd_list_presets() {
    for (const ambc::Preset& p : ambc::all_presets()) {
        std::printf("%-10s %s\n", p.name.c_str(), p.description.c_str());
        for (const ambc::PresetEntry& e : p.entries) std::printf("           - %s\n", e.label.c_str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level Monte Carlo simulator for ambient-backscatter ratio detection"};
    app.set_version_flag("--version", ambc::kVersion);
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;

    CLI::App* run = app.add_subcommand("run", "Run experiments and write one CSV per scenario");
    run->add_option("--config", config_path, "Flat key = value experiment config");
    run->add_option("--preset", preset_name, "Named experiment bundle (see list-presets)");
    run->add_option("--out", out_dir, "Output directory");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the master seed");
    run->add_option("--threads", threads, "Worker threads (0 = library default)");

    app.add_subcommand("selfcheck", "Run the analytic consistency checks");
    app.add_subcommand("list-presets", "List available experiment presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("run"))
            return cmd_run(config_path, preset_name, out_dir, seed_opt->count() > 0, seed, threads);
        if (app.got_subcommand("selfcheck")) return cmd_selfcheck();
        return cmd_list_presets();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
