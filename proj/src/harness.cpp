#include "ambc/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#include "ambc/channel.hpp"
#include "ambc/coding.hpp"
#include "ambc/detectors.hpp"
#include "ambc/ratio_stats.hpp"
#include "ambc/rng.hpp"
#include "ambc/selection.hpp"

namespace ambc {

namespace {

// Trials are executed in fixed-size batches; stopping rules are evaluated
// only at batch boundaries so the executed trial set does not depend on the
// thread count.
constexpr std::uint64_t kBatchBits = 16384;

enum class Family { kSymbolwise, kRepetition, kEnergy };

Family family_of(Scenario s) {
    switch (s) {
        case Scenario::kMlRaw:
        case Scenario::kMinDistance:
        case Scenario::kMagnitudeRatio:
            return Family::kSymbolwise;
        case Scenario::kEnergy:
            return Family::kEnergy;
        default:
            return Family::kRepetition;
    }
}

bool is_interleaved(Scenario s) {
    return s == Scenario::kRepHardInterleaved || s == Scenario::kRepSoftInterleaved ||
           s == Scenario::kRatioSelection;
}

struct TrialWorkspace {
    std::vector<int> bits;
    std::vector<int> slots;
    ReceivedBlock block;
    ReceivedCode rc;
};

TrialWorkspace& workspace() {
    static thread_local TrialWorkspace ws;
    return ws;
}

std::uint64_t symbolwise_trial(const ExperimentSpec& spec, const SystemConfig& sys, RandomStream& stream,
                               TrialWorkspace& ws) {
    const int k_len = sys.coherence_length;
    ws.bits.resize(k_len);
    for (int& b : ws.bits) b = stream.bpsk_bit();
    const ChannelRealization ch = sample_channel(stream, sys);
    synthesize_block(stream, ch, ws.bits, sys, ws.block);

    const double p_s = sys.signal_power();
    const double n_w = sys.noise_power;
    std::uint64_t errors = 0;

    if (spec.scenario == Scenario::kMinDistance) {
        const BlockLinearizer linearize(ch, 0, 1, p_s, n_w);
        for (int n = 0; n < k_len; ++n) {
            const LinearizedSample lin = linearize(ws.block.at(0, n), ws.block.at(1, n), spec.compensation);
            errors += min_distance_detect(lin).x_hat != ws.bits[n];
        }
        return errors;
    }

    // Hypothesis statistics are constant over the coherence block.
    const HypothesisStats stats_minus = hypothesis_stats(ch, 0, 1, -1, p_s, n_w);
    const HypothesisStats stats_plus = hypothesis_stats(ch, 0, 1, +1, p_s, n_w);
    for (int n = 0; n < k_len; ++n) {
        const cdouble lambda = ws.block.at(0, n) / ws.block.at(1, n);
        const Decision d = spec.scenario == Scenario::kMlRaw
                               ? ml_detect_ratio(lambda, stats_minus, stats_plus)
                               : magnitude_ratio_detect(std::abs(lambda), stats_minus, stats_plus);
        errors += d.x_hat != ws.bits[n];
    }
    return errors;
}

std::uint64_t repetition_trial(const ExperimentSpec& spec, const SystemConfig& sys, RandomStream& stream,
                               TrialWorkspace& ws) {
    const int m_len = sys.repetition_length;
    const int k_len = sys.coherence_length; // == m_len, validated
    const bool inter = is_interleaved(spec.scenario);
    const double p_s = sys.signal_power();
    const double n_w = sys.noise_power;

    ws.bits.resize(k_len);
    for (int& b : ws.bits) b = stream.bpsk_bit();
    const CodeBlock cb = encode(ws.bits, m_len, inter);

    ws.rc.m_len = m_len;
    ws.rc.k_len = k_len;
    ws.rc.interleaved = inter;
    ws.rc.y_matrix.resize(static_cast<std::size_t>(m_len) * k_len);
    ws.rc.h_per_block.resize(k_len);
    ws.rc.tau_per_block.resize(k_len);
    ws.slots.resize(m_len);

    for (int b = 0; b < k_len; ++b) {
        const ChannelRealization ch = sample_channel(stream, sys);
        for (int m = 0; m < m_len; ++m) ws.slots[m] = cb.at(m, b);
        synthesize_block(stream, ch, ws.slots, sys, ws.block);

        int bi = 0;
        int bj = 1;
        if (spec.scenario == Scenario::kRatioSelection) {
            const RatioChoice choice = select_ratio(ch);
            bi = choice.i;
            bj = choice.j;
        }
        const BlockLinearizer linearize(ch, bi, bj, p_s, n_w);
        ws.rc.h_per_block[b] = linearize.stats().h_eff;
        ws.rc.tau_per_block[b] = linearize.stats().tau;

        for (int m = 0; m < m_len; ++m) {
            const cdouble z_i = ws.block.at(bi, m);
            const cdouble z_j = ws.block.at(bj, m);
            const cdouble y = spec.compensation == Compensation::kPerfect
                                  ? linearize_sample_perfect(z_i, z_j, ws.block.s[m], ch, bi, bj, p_s, n_w).y
                                  : linearize(z_i, z_j, spec.compensation).y;
            // Codeword k sits in column k; row index is the block for
            // interleaved transmission, the slot otherwise.
            if (inter)
                ws.rc.y_matrix[static_cast<std::size_t>(b) * k_len + m] = y;
            else
                ws.rc.y_matrix[static_cast<std::size_t>(m) * k_len + b] = y;
        }
    }

    std::uint64_t errors = 0;
    for (int k = 0; k < k_len; ++k) {
        Decision d{};
        switch (spec.scenario) {
            case Scenario::kAveraging:
                d = decode_average(ws.rc, k);
                break;
            case Scenario::kRepHard:
            case Scenario::kRepHardInterleaved:
                d = decode_hard(ws.rc, k);
                break;
            default: // rep_soft, rep_soft_interleaved, ratio_selection
                d = decode_soft(ws.rc, k);
                break;
        }
        errors += d.x_hat != ws.bits[k];
    }
    return errors;
}

std::uint64_t energy_trial(const ExperimentSpec&, const SystemConfig& sys, RandomStream& stream,
                           TrialWorkspace& ws) {
    const int m_len = sys.repetition_length;
    const int bit = stream.bpsk_bit();
    const ChannelRealization ch = sample_channel(stream, sys);
    ws.slots.assign(m_len, bit);
    synthesize_block(stream, ch, ws.slots, sys, ws.block);
    const std::span<const cdouble> branch(ws.block.z.data(), static_cast<std::size_t>(m_len));
    const Decision d = energy_detect(branch, ch, 0, sys.signal_power(), sys.noise_power);
    return d.x_hat != bit ? 1 : 0;
}

std::uint64_t trial_errors(const ExperimentSpec& spec, const SystemConfig& sys, RandomStream stream,
                           TrialWorkspace& ws) {
    switch (family_of(spec.scenario)) {
        case Family::kSymbolwise:
            return symbolwise_trial(spec, sys, stream, ws);
        case Family::kRepetition:
            return repetition_trial(spec, sys, stream, ws);
        case Family::kEnergy:
            return energy_trial(spec, sys, stream, ws);
    }
    return 0;
}

double binomial_half_width(std::uint64_t errors, std::uint64_t bits) {
    if (bits == 0) return 0.0;
    const double p = double(errors) / double(bits);
    return 1.96 * std::sqrt(p * (1.0 - p) / double(bits));
}

BerPoint finish_point(double snr_db, std::uint64_t bits, std::uint64_t errors) {
    BerPoint pt;
    pt.snr_db = snr_db;
    pt.bits_tested = bits;
    pt.bit_errors = errors;
    pt.ber = bits ? double(errors) / double(bits) : 0.0;
    pt.half_width_95 = binomial_half_width(errors, bits);
    return pt;
}

BerPoint run_point_parallel(const ExperimentSpec& spec, double snr_db, std::uint32_t point_index, int threads) {
    SystemConfig sys = spec.system;
    sys.direct_link_snr_db = snr_db;

    const std::uint64_t bpt = spec.bits_per_trial();
    const std::uint64_t trials_cap = spec.stop.max_bits / bpt;
    const std::uint64_t batch = std::max<std::uint64_t>(1, kBatchBits / bpt);
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();

    std::uint64_t done = 0;
    std::uint64_t errors = 0;
    while (done < trials_cap) {
        const std::int64_t n = static_cast<std::int64_t>(std::min(batch, trials_cap - done));
        std::int64_t batch_errors = 0;
        std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic) reduction(+ : batch_errors) num_threads(n_threads) shared(eptr)
        for (std::int64_t t = 0; t < n; ++t) {
            try {
                RandomStream stream(sys.seed, point_index, static_cast<std::uint32_t>(done + t));
                batch_errors += static_cast<std::int64_t>(trial_errors(spec, sys, stream, workspace()));
            } catch (...) {
#pragma omp critical
                if (!eptr) eptr = std::current_exception();
            }
        }
        if (eptr) std::rethrow_exception(eptr);
        done += n;
        errors += static_cast<std::uint64_t>(batch_errors);
        if (errors >= spec.stop.target_errors) break;
    }
    return finish_point(snr_db, done * bpt, errors);
}

BerPoint run_point_serial(const ExperimentSpec& spec, double snr_db, std::uint32_t point_index) {
    SystemConfig sys = spec.system;
    sys.direct_link_snr_db = snr_db;

    const std::uint64_t bpt = spec.bits_per_trial();
    const std::uint64_t trials_cap = spec.stop.max_bits / bpt;
    const std::uint64_t batch = std::max<std::uint64_t>(1, kBatchBits / bpt);

    TrialWorkspace ws;
    std::uint64_t done = 0;
    std::uint64_t errors = 0;
    while (done < trials_cap) {
        const std::uint64_t n = std::min(batch, trials_cap - done);
        for (std::uint64_t t = 0; t < n; ++t) {
            RandomStream stream(sys.seed, point_index, static_cast<std::uint32_t>(done + t));
            errors += trial_errors(spec, sys, stream, ws);
        }
        done += n;
        if (errors >= spec.stop.target_errors) break;
    }
    return finish_point(snr_db, done * bpt, errors);
}

bool same_trial_structure(const ExperimentSpec& a, const ExperimentSpec& b) {
    return family_of(a.scenario) == family_of(b.scenario) &&
           a.system.num_antennas == b.system.num_antennas &&
           a.system.repetition_length == b.system.repetition_length &&
           a.system.coherence_length == b.system.coherence_length;
}

} // namespace

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::kMlRaw: return "ml_raw";
        case Scenario::kMinDistance: return "min_distance";
        case Scenario::kMagnitudeRatio: return "magnitude_ratio";
        case Scenario::kEnergy: return "energy";
        case Scenario::kAveraging: return "averaging";
        case Scenario::kRepHard: return "rep_hard";
        case Scenario::kRepSoft: return "rep_soft";
        case Scenario::kRepHardInterleaved: return "rep_hard_interleaved";
        case Scenario::kRepSoftInterleaved: return "rep_soft_interleaved";
        case Scenario::kRatioSelection: return "ratio_selection";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
    for (Scenario s : {Scenario::kMlRaw, Scenario::kMinDistance, Scenario::kMagnitudeRatio, Scenario::kEnergy,
                       Scenario::kAveraging, Scenario::kRepHard, Scenario::kRepSoft,
                       Scenario::kRepHardInterleaved, Scenario::kRepSoftInterleaved, Scenario::kRatioSelection})
        if (name == to_string(s)) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

const char* to_string(Compensation c) {
    switch (c) {
        case Compensation::kEstimated: return "estimated";
        case Compensation::kNone: return "none";
        case Compensation::kPerfect: return "perfect";
    }
    return "unknown";
}

Compensation compensation_from_string(const std::string& name) {
    for (Compensation c : {Compensation::kEstimated, Compensation::kNone, Compensation::kPerfect})
        if (name == to_string(c)) return c;
    throw std::invalid_argument("unknown compensation mode: " + name);
}

std::uint64_t ExperimentSpec::bits_per_trial() const {
    switch (family_of(scenario)) {
        case Family::kEnergy:
            return 1;
        default:
            return static_cast<std::uint64_t>(system.coherence_length);
    }
}

void ExperimentSpec::validate(bool strict) const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("ExperimentSpec: " + msg); };
    if (snr_grid_db.empty()) fail("snr grid must be nonempty");
    for (double v : snr_grid_db)
        if (!std::isfinite(v)) fail("snr grid entries must be finite");
    if (!std::is_sorted(snr_grid_db.begin(), snr_grid_db.end())) fail("snr grid must be sorted ascending");
    system.validate();

    switch (family_of(scenario)) {
        case Family::kSymbolwise:
            if (system.repetition_length != 1) fail("per-symbol scenarios require repetition_length == 1");
            break;
        case Family::kRepetition:
            if (system.repetition_length != system.coherence_length)
                fail("repetition scenarios take M == K");
            break;
        case Family::kEnergy:
            break;
    }
    if (stop.target_errors < 1) fail("target_errors must be >= 1");
    if (strict && stop.target_errors < 50) fail("target_errors below 50 is not publishable");
    if (stop.max_bits < bits_per_trial()) fail("max_bits smaller than one trial");
}

BerCurve run_experiment(const ExperimentSpec& spec, int threads) {
    spec.validate();
    BerCurve curve;
    curve.scenario = spec.scenario;
    curve.points.reserve(spec.snr_grid_db.size());
    for (std::size_t p = 0; p < spec.snr_grid_db.size(); ++p)
        curve.points.push_back(run_point_parallel(spec, spec.snr_grid_db[p], static_cast<std::uint32_t>(p), threads));
    return curve;
}

BerCurve run_experiment_serial(const ExperimentSpec& spec) {
    spec.validate();
    BerCurve curve;
    curve.scenario = spec.scenario;
    curve.points.reserve(spec.snr_grid_db.size());
    for (std::size_t p = 0; p < spec.snr_grid_db.size(); ++p)
        curve.points.push_back(run_point_serial(spec, spec.snr_grid_db[p], static_cast<std::uint32_t>(p)));
    return curve;
}

double closed_form_reference(const ExperimentSpec& spec, double snr_db, std::uint32_t point_index,
                             std::uint64_t n_trials) {
    if (n_trials == 0) throw std::invalid_argument("closed_form_reference: need at least one trial");
    SystemConfig sys = spec.system;
    sys.direct_link_snr_db = snr_db;
    const double p_s = sys.signal_power();
    const double n_w = sys.noise_power;

    double acc = 0.0;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
        RandomStream stream(sys.seed, point_index, static_cast<std::uint32_t>(t));
        for (int k = 0; k < sys.coherence_length; ++k) stream.bpsk_bit(); // mirror trial order
        const ChannelRealization ch = sample_channel(stream, sys);
        int bi = 0;
        int bj = 1;
        if (spec.scenario == Scenario::kRatioSelection) {
            const RatioChoice choice = select_ratio(ch);
            bi = choice.i;
            bj = choice.j;
        }
        const LinearNoiseStats lin = effective_channel(ch, bi, bj, p_s, n_w);
        acc += closed_form_ber(lin.h_eff, lin.tau);
    }
    return acc / double(n_trials);
}

PairedReport compare_paired(const ExperimentSpec& spec_a, const ExperimentSpec& spec_b, int threads) {
    spec_a.validate();
    spec_b.validate();
    if (spec_a.snr_grid_db != spec_b.snr_grid_db) throw std::invalid_argument("compare_paired: grids differ");
    if (spec_a.system.seed != spec_b.system.seed) throw std::invalid_argument("compare_paired: seeds differ");

    PairedReport report;
    report.points.reserve(spec_a.snr_grid_db.size());

    if (!same_trial_structure(spec_a, spec_b)) {
        // No shared randomness possible; arms run independently and the
        // interval is the unpaired binomial combination.
        const BerCurve ca = run_experiment(spec_a, threads);
        const BerCurve cb = run_experiment(spec_b, threads);
        for (std::size_t p = 0; p < ca.points.size(); ++p) {
            const BerPoint& a = ca.points[p];
            const BerPoint& b = cb.points[p];
            PairedPoint pt;
            pt.snr_db = a.snr_db;
            pt.bits_a = a.bits_tested;
            pt.bits_b = b.bits_tested;
            pt.errors_a = a.bit_errors;
            pt.errors_b = b.bit_errors;
            pt.ber_a = a.ber;
            pt.ber_b = b.ber;
            pt.delta = a.ber - b.ber;
            const double sa = a.half_width_95 / 1.96;
            const double sb = b.half_width_95 / 1.96;
            pt.delta_half_width_95 = 1.96 * std::sqrt(sa * sa + sb * sb);
            pt.shared_randomness = false;
            report.points.push_back(pt);
        }
        return report;
    }

    if (spec_a.stop.max_bits != spec_b.stop.max_bits || spec_a.stop.target_errors != spec_b.stop.target_errors)
        throw std::invalid_argument("compare_paired: paired arms need identical stop rules");

    const std::uint64_t bpt = spec_a.bits_per_trial();
    const std::uint64_t trials_cap = spec_a.stop.max_bits / bpt;
    const std::uint64_t batch = std::max<std::uint64_t>(1, kBatchBits / bpt);
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();

    for (std::size_t p = 0; p < spec_a.snr_grid_db.size(); ++p) {
        const double snr_db = spec_a.snr_grid_db[p];
        SystemConfig sys_a = spec_a.system;
        SystemConfig sys_b = spec_b.system;
        sys_a.direct_link_snr_db = snr_db;
        sys_b.direct_link_snr_db = snr_db;

        std::uint64_t done = 0;
        std::uint64_t err_a = 0;
        std::uint64_t err_b = 0;
        std::int64_t sum_d = 0;
        std::int64_t sum_d_sq = 0;

        while (done < trials_cap) {
            const std::int64_t n = static_cast<std::int64_t>(std::min(batch, trials_cap - done));
            std::int64_t ba = 0, bb = 0, bd = 0, bd2 = 0;
            std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic) reduction(+ : ba, bb, bd, bd2) num_threads(n_threads) shared(eptr)
            for (std::int64_t t = 0; t < n; ++t) {
                try {
                    const auto trial = static_cast<std::uint32_t>(done + t);
                    const auto ea = static_cast<std::int64_t>(trial_errors(
                        spec_a, sys_a, RandomStream(sys_a.seed, static_cast<std::uint32_t>(p), trial), workspace()));
                    const auto eb = static_cast<std::int64_t>(trial_errors(
                        spec_b, sys_b, RandomStream(sys_b.seed, static_cast<std::uint32_t>(p), trial), workspace()));
                    const std::int64_t d = ea - eb;
                    ba += ea;
                    bb += eb;
                    bd += d;
                    bd2 += d * d;
                } catch (...) {
#pragma omp critical
                    if (!eptr) eptr = std::current_exception();
                }
            }
            if (eptr) std::rethrow_exception(eptr);
            done += n;
            err_a += static_cast<std::uint64_t>(ba);
            err_b += static_cast<std::uint64_t>(bb);
            sum_d += bd;
            sum_d_sq += bd2;
            if (err_a >= spec_a.stop.target_errors && err_b >= spec_b.stop.target_errors) break;
        }

        const std::uint64_t bits = done * bpt;
        PairedPoint pt;
        pt.snr_db = snr_db;
        pt.bits_a = bits;
        pt.bits_b = bits;
        pt.errors_a = err_a;
        pt.errors_b = err_b;
        pt.ber_a = bits ? double(err_a) / double(bits) : 0.0;
        pt.ber_b = bits ? double(err_b) / double(bits) : 0.0;
        pt.delta = pt.ber_a - pt.ber_b;
        if (done >= 2) {
            const double n_trials = double(done);
            const double mean_d = double(sum_d) / n_trials;
            const double var_d = (double(sum_d_sq) - n_trials * mean_d * mean_d) / (n_trials - 1.0);
            pt.delta_half_width_95 = 1.96 * std::sqrt(std::max(0.0, var_d) * n_trials) / double(bits);
        } else {
            pt.delta_half_width_95 = 1.0;
        }
        pt.shared_randomness = true;
        report.points.push_back(pt);
    }
    return report;
}

} // namespace ambc
