#ifndef AMBC_HARNESS_HPP
#define AMBC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ambc/config.hpp"
#include "ambc/linearize.hpp"

namespace ambc {

enum class Scenario {
    kMlRaw,
    kMinDistance,
    kMagnitudeRatio,
    kEnergy,
    kAveraging,
    kRepHard,
    kRepSoft,
    kRepHardInterleaved,
    kRepSoftInterleaved,
    kRatioSelection,
};

const char* to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

// A point stops once it has target_errors errors or max_bits bits (rounded
// down to whole trials).
struct StopRule {
    std::uint64_t max_bits = 1'000'000;
    std::uint64_t target_errors = 100;
};

struct ExperimentSpec {
    Scenario scenario = Scenario::kMinDistance;
    std::vector<double> snr_grid_db;
    SystemConfig system;
    StopRule stop;
    Compensation compensation = Compensation::kEstimated;

    // strict additionally enforces the publishable-point floor of
    // target_errors >= 50 (used by the CLI; unit tests run smaller).
    void validate(bool strict = false) const;

    // Information bits produced by one trial substream.
    std::uint64_t bits_per_trial() const;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t bits_tested = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double half_width_95 = 0.0; // binomial normal approximation

    bool operator==(const BerPoint&) const = default;
};

struct BerCurve {
    Scenario scenario;
    std::vector<BerPoint> points;

    bool operator==(const BerCurve&) const = default;
};

const char* to_string(Compensation c);
Compensation compensation_from_string(const std::string& name);

// Monte Carlo sweep over the SNR grid. Trials are scheduled in fixed-size
// batches over per-(point, trial) substreams, so the result is bit-identical
// for any thread count. threads <= 0 uses the OpenMP default.
BerCurve run_experiment(const ExperimentSpec& spec, int threads = 0);

// Plain-loop reference implementation; must produce the same curve.
BerCurve run_experiment_serial(const ExperimentSpec& spec);

// Channel-averaged closed-form BER over exactly n_trials trial substreams of
// the given grid point, mirroring the trial draw order so it sees the same
// channels as run_experiment.
double closed_form_reference(const ExperimentSpec& spec, double snr_db, std::uint32_t point_index,
                             std::uint64_t n_trials);

struct PairedPoint {
    double snr_db = 0.0;
    std::uint64_t bits_a = 0;
    std::uint64_t bits_b = 0;
    std::uint64_t errors_a = 0;
    std::uint64_t errors_b = 0;
    double ber_a = 0.0;
    double ber_b = 0.0;
    double delta = 0.0; // ber_a - ber_b
    double delta_half_width_95 = 0.0;
    bool shared_randomness = false;
};

struct PairedReport {
    std::vector<PairedPoint> points;
};

// Runs both scenarios over the same grid and master seed. When the two specs
// have the same trial structure, every trial of both arms consumes the same
// substream, and the difference interval comes from the per-trial paired
// error counts; otherwise the arms run independently and the interval is the
// unpaired combination. Throws on mismatched grids or seeds.
PairedReport compare_paired(const ExperimentSpec& spec_a, const ExperimentSpec& spec_b, int threads = 0);

} // namespace ambc

#endif
