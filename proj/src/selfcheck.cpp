#include "ambc/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "ambc/channel.hpp"
#include "ambc/detectors.hpp"
#include "ambc/linearize.hpp"
#include "ambc/ratio_stats.hpp"
#include "ambc/rng.hpp"

namespace ambc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Integral over a disc of radius R: trapezoid in the angle (periodic, so it
// converges fast) and adaptive Simpson in the radius.
double simpson_radial(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return simpson_radial(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
           simpson_radial(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

// bulk_scale marks where the ring mass lives; panel edges in decades of it
// keep the adaptive rule from terminating on a flat 3-point probe of a disc
// that is mostly empty.
double integrate_disc(const std::function<double(cdouble)>& density, double bulk_scale, double radius,
                      int n_theta = 128) {
    auto ring = [&](double r) {
        double acc = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const double th = 2.0 * kPi * k / n_theta;
            acc += density({r * std::cos(th), r * std::sin(th)});
        }
        return r * acc * (2.0 * kPi / n_theta);
    };
    std::vector<double> edges{0.0};
    for (double e = 0.1 * bulk_scale; e < radius; e *= 10.0) edges.push_back(e);
    edges.push_back(radius);
    double total = 0.0;
    for (std::size_t i = 1; i < edges.size(); ++i) {
        const double a = edges[i - 1];
        const double b = edges[i];
        const double m = 0.5 * (a + b);
        total += simpson_radial(ring, a, b, ring(a), ring(m), ring(b), 1e-9, 24);
    }
    return total;
}

ChannelRealization random_channel(RandomStream& stream, const SystemConfig& sys) { return sample_channel(stream, sys); }

} // namespace

bool SelfCheckReport::all_passed() const {
    for (const SelfCheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

SelfCheckReport run_selfcheck(const SelfCheckOptions& options) {
    SelfCheckReport report;
    SystemConfig sys;
    sys.direct_link_snr_db = 10.0;
    sys.seed = options.seed;
    const double p_s = sys.signal_power();
    const double n_w = sys.noise_power;
    RandomStream stream(options.seed, 0xFFFFFFFFu, 0);

    // Observation-ratio density normalizes to 1. Tail beyond the disc decays
    // like |lambda|^-4; an analytic bound on that mass is added back.
    {
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const ChannelRealization ch = random_channel(stream, sys);
            const HypothesisStats stats = hypothesis_stats(ch, 0, 1, rep % 2 ? 1 : -1, p_s, n_w);
            const double sigma_ratio = std::sqrt(stats.sigma1_sq / stats.sigma2_sq);
            const double tail_coeff = (1.0 - std::norm(stats.rho)) * stats.sigma1_sq / stats.sigma2_sq;
            const double radius = std::sqrt(tail_coeff * 1e5); // tail mass ~ 1e-5
            const double tail = tail_coeff / (radius * radius);
            const double mass =
                integrate_disc([&](cdouble l) { return ratio_pdf(l, stats); }, sigma_ratio, radius);
            worst = std::max(worst, std::abs(mass + tail - 1.0));
        }
        report.checks.push_back({"ratio_pdf_normalization", worst < 1e-3, worst, 1e-3});
    }

    // Linearized-noise density normalizes to 1 (exact tail mass of this
    // density is pi*tau / (R^2 + pi*tau)).
    {
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const ChannelRealization ch = random_channel(stream, sys);
            const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, n_w);
            const double pt = kPi * lin.tau;
            const double radius = std::sqrt(pt * 1e5);
            const double tail = pt / (radius * radius + pt);
            const double mass = integrate_disc([&](cdouble w) { return linear_noise_pdf(w, ch, 0, 1, p_s, n_w); },
                                               std::sqrt(pt), radius);
            worst = std::max(worst, std::abs(mass + tail - 1.0));
        }
        report.checks.push_back({"linear_noise_pdf_normalization", worst < 1e-3, worst, 1e-3});
    }

    // Error-variable density normalizes to 1.
    {
        double worst = 0.0;
        for (int rep = 0; rep < 3; ++rep) {
            const ChannelRealization ch = random_channel(stream, sys);
            const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, n_w);
            const double h_sq = std::norm(lin.h_eff);
            const double pt = kPi * lin.tau * h_sq;
            const double radius = std::sqrt(pt * 1e5);
            const double tail = pt / (radius * radius + pt);
            const double mass = integrate_disc([&](cdouble phi) { return error_pdf(phi, lin.tau, h_sq); },
                                               std::sqrt(pt), radius);
            worst = std::max(worst, std::abs(mass + tail - 1.0));
        }
        report.checks.push_back({"error_pdf_normalization", worst < 1e-3, worst, 1e-3});
    }

    // Four-corner combination of the error CDF over the error region equals
    // the closed-form BER to near machine precision.
    {
        const double inf = std::numeric_limits<double>::infinity();
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const ChannelRealization ch = random_channel(stream, sys);
            const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, n_w);
            const double h_sq = std::norm(lin.h_eff);
            const double edge = -h_sq;
            const double combo = error_cdf_G(edge, inf, lin.tau, h_sq) - error_cdf_G(-inf, inf, lin.tau, h_sq) -
                                 error_cdf_G(edge, -inf, lin.tau, h_sq) + error_cdf_G(-inf, -inf, lin.tau, h_sq);
            double reference = closed_form_ber(lin.h_eff, lin.tau);
            if (options.tamper_ber_constant) reference += 1e-6;
            worst = std::max(worst, std::abs(combo - reference));
        }
        report.checks.push_back({"error_cdf_matches_closed_form", worst < 1e-12, worst, 1e-12});
    }

    // Monte Carlo BER of the minimum distance detector on the exact ratio
    // noise model against the closed form, within max(10% rel, 4 sigma).
    {
        const ChannelRealization ch = random_channel(stream, sys);
        const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, n_w);
        const std::uint64_t n = 200'000;
        std::uint64_t errors = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const int x = stream.bpsk_bit();
            const cdouble num = stream.cnormal(n_w) / ch.h_sr[0] - stream.cnormal(n_w) / ch.h_sr[1];
            const cdouble w = num / stream.cnormal(p_s);
            const cdouble y = lin.h_eff * double(x) + w;
            errors += min_distance_detect({y, lin.h_eff, lin.tau}).x_hat != x;
        }
        const double mc = double(errors) / double(n);
        const double expected = closed_form_ber(lin.h_eff, lin.tau);
        const double sigma = std::sqrt(expected * (1.0 - expected) / double(n));
        const double tol = std::max(0.10 * expected, 4.0 * sigma);
        const double err = std::abs(mc - expected);
        report.checks.push_back({"monte_carlo_matches_closed_form", err < tol, err, tol});
    }

    return report;
}

} // namespace ambc
