#include "ambc/presets.hpp"

namespace ambc {

namespace {

std::vector<double> grid(double start, double step, double stop) {
    std::vector<double> g;
    for (double v = start; v <= stop + 1e-9; v += step) g.push_back(v);
    return g;
}

ExperimentSpec base_spec(Scenario scenario, std::vector<double> snr, int m, int k, int q) {
    ExperimentSpec spec;
    spec.scenario = scenario;
    spec.snr_grid_db = std::move(snr);
    spec.system.num_antennas = q;
    spec.system.repetition_length = m;
    spec.system.coherence_length = k;
    spec.system.seed = 12345;
    spec.stop.max_bits = 200'000;
    spec.stop.target_errors = 200;
    return spec;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> presets;

    {
        Preset p;
        p.name = "fig3";
        p.description = "Per-symbol detectors, no repetition: complex-ratio ML vs minimum distance vs "
                        "magnitude-ratio baseline, with the closed-form reference curve.";
        p.entries.push_back({"ml_raw", base_spec(Scenario::kMlRaw, grid(0, 5, 30), 1, 20, 2), false});
        p.entries.push_back({"min_distance", base_spec(Scenario::kMinDistance, grid(0, 5, 30), 1, 20, 2), true});
        p.entries.push_back(
            {"magnitude_ratio", base_spec(Scenario::kMagnitudeRatio, grid(0, 5, 30), 1, 20, 2), false});
        presets.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "fig4_desk";
        p.description = "Symbol averaging at repetition lengths 100 and 200; doubling the length shifts "
                        "the waterfall left by about 3 dB.";
        p.entries.push_back({"averaging_m100", base_spec(Scenario::kAveraging, grid(0, 2, 20), 100, 100, 2), false});
        p.entries.push_back({"averaging_m200", base_spec(Scenario::kAveraging, grid(0, 2, 20), 200, 200, 2), false});
        presets.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "fig5_desk";
        p.description = "Repetition length 100: averaging vs hard/soft repetition decisions, with and "
                        "without interleaving.";
        const auto g = grid(10, 2, 24);
        p.entries.push_back({"averaging", base_spec(Scenario::kAveraging, g, 100, 100, 2), false});
        p.entries.push_back({"rep_hard", base_spec(Scenario::kRepHard, g, 100, 100, 2), false});
        p.entries.push_back({"rep_soft", base_spec(Scenario::kRepSoft, g, 100, 100, 2), false});
        p.entries.push_back(
            {"rep_hard_interleaved", base_spec(Scenario::kRepHardInterleaved, g, 100, 100, 2), false});
        p.entries.push_back(
            {"rep_soft_interleaved", base_spec(Scenario::kRepSoftInterleaved, g, 100, 100, 2), false});
        presets.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "fig6_desk";
        p.description = "Averaged-power baseline vs interleaved soft repetition at length 100: the former "
                        "floors at high SNR, the latter keeps falling.";
        p.entries.push_back({"energy", base_spec(Scenario::kEnergy, grid(15, 5, 35), 100, 100, 2), false});
        auto soft = base_spec(Scenario::kRepSoftInterleaved, grid(15, 5, 35), 100, 100, 2);
        soft.stop.max_bits = 2'000'000;
        p.entries.push_back({"rep_soft_interleaved", soft, false});
        presets.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "fig8_desk";
        p.description = "Four-antenna pairwise ratio selection at repetition length 50 against the fixed "
                        "two-antenna pair at length 100.";
        p.entries.push_back(
            {"ratio_selection_q4_m50", base_spec(Scenario::kRatioSelection, grid(10, 5, 20), 50, 50, 4), true});
        p.entries.push_back(
            {"rep_soft_interleaved_q2_m100",
             base_spec(Scenario::kRepSoftInterleaved, grid(10, 5, 20), 100, 100, 2), false});
        presets.push_back(std::move(p));
    }
    {
        Preset p;
        p.name = "fig9_desk";
        p.description = "Effect of the 2pi phase correction on interleaved soft repetition: none vs "
                        "estimated vs the perfect-compensation oracle.";
        const auto g = grid(10, 2, 20);
        for (Compensation c : {Compensation::kNone, Compensation::kEstimated, Compensation::kPerfect}) {
            auto spec = base_spec(Scenario::kRepSoftInterleaved, g, 100, 100, 2);
            spec.compensation = c;
            p.entries.push_back({std::string("compensation_") + to_string(c), spec, false});
        }
        presets.push_back(std::move(p));
    }
    return presets;
}

} // namespace

const std::vector<Preset>& all_presets() {
    static const std::vector<Preset> presets = build_presets();
    return presets;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return &p;
    return nullptr;
}

} // namespace ambc
