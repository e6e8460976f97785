#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/detectors.hpp"
#include "ambc/linearize.hpp"
#include "ambc/ratio_stats.hpp"
#include "support/quadrature.hpp"

using namespace ambc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ChannelRealization seeded_channel(std::uint64_t seed, const SystemConfig& sys, std::uint32_t trial = 0) {
    RandomStream s(seed, 0xFFFF0000u, trial);
    return sample_channel(s, sys);
}

std::complex<double> std_cnormal(std::mt19937_64& rng, double var) {
    std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
    return {n(rng), n(rng)};
}

// Four-corner combination of G over the error region phi_r < -|h|^2.
double ber_from_G(double h_sq, double tau) {
    return error_cdf_G(-h_sq, kInf, tau, h_sq) + error_cdf_G(-kInf, -kInf, tau, h_sq) -
           error_cdf_G(kInf, -kInf, tau, h_sq) - error_cdf_G(-h_sq, -kInf, tau, h_sq);
}

} // namespace

TEST_CASE("hypothesis_stats definitions and degenerate limits") {
    SystemConfig sys;
    sys.direct_link_snr_db = 10.0;
    ChannelRealization ch = seeded_channel(21, sys);
    const double p_s = sys.signal_power();

    SUBCASE("zero backscatter reduces mu to the direct channel") {
        ch.g = {0.0, 0.0};
        const HypothesisStats st = hypothesis_stats(ch, 0, 1, +1, p_s, 1.0);
        CHECK(st.mu1 == ch.h_sr[0]);
        CHECK(st.mu2 == ch.h_sr[1]);
        const cdouble want_rho =
            std::conj(ch.h_sr[0]) * ch.h_sr[1] * p_s / std::sqrt(st.sigma1_sq * st.sigma2_sq);
        CHECK(std::abs(st.rho - want_rho) < 1e-15);
    }

    SUBCASE("heavy noise decorrelates the branches") {
        const HypothesisStats st = hypothesis_stats(ch, 0, 1, +1, p_s, 1e12);
        CHECK(std::abs(st.rho) < 1e-9);
    }

    SUBCASE("rho magnitude matches the empirical correlation") {
        const HypothesisStats st = hypothesis_stats(ch, 0, 1, -1, p_s, 1.0);
        std::mt19937_64 rng(99);
        std::complex<double> cross{0.0, 0.0};
        double p1 = 0.0;
        double p2 = 0.0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) {
            const cdouble s = std_cnormal(rng, p_s);
            const cdouble z1 = st.mu1 * s + std_cnormal(rng, 1.0);
            const cdouble z2 = st.mu2 * s + std_cnormal(rng, 1.0);
            cross += std::conj(z1) * z2;
            p1 += std::norm(z1);
            p2 += std::norm(z2);
        }
        const double rho_hat = std::abs(cross) / std::sqrt(p1 * p2);
        CHECK(rho_hat == doctest::Approx(std::abs(st.rho)).epsilon(0.01));
    }
}

TEST_CASE("ratio_pdf normalizes, is circular at rho zero, rejects bad stats") {
    SystemConfig sys;
    sys.direct_link_snr_db = 10.0;
    const double p_s = sys.signal_power();

    SUBCASE("quadrature normalization with analytic tail") {
        for (std::uint32_t trial : {0u, 1u, 2u}) {
            const ChannelRealization ch = seeded_channel(31, sys, trial);
            const HypothesisStats st = hypothesis_stats(ch, 0, 1, trial % 2 ? +1 : -1, p_s, 1.0);
            const double rho_sq = std::norm(st.rho);
            const cdouble center = std::conj(st.rho) * std::sqrt(st.sigma1_sq / st.sigma2_sq);
            const double scale = std::sqrt((1.0 - rho_sq) * st.sigma1_sq / st.sigma2_sq);
            const double tail_coeff = (1.0 - rho_sq) * st.sigma1_sq / st.sigma2_sq;
            const double radius = std::sqrt(tail_coeff * 1e6) + 10.0 * (std::abs(center) + scale);
            const double tail = tail_coeff / (radius * radius);
            const double mass = testq::disc_integral([&](cdouble l) { return ratio_pdf(l, st); }, center,
                                                     scale, radius);
            CHECK(mass + tail == doctest::Approx(1.0).epsilon(1e-3));
        }
    }

    SUBCASE("rho = 0 depends on magnitude only") {
        HypothesisStats st{2.0, 3.0, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
        const double ref = ratio_pdf({0.7, 0.0}, st);
        for (double th : {0.3, 1.2, 2.9, -2.1})
            CHECK(ratio_pdf(std::polar(0.7, th), st) == doctest::Approx(ref).epsilon(1e-12));
    }

    SUBCASE("|rho| >= 1 is rejected") {
        HypothesisStats st{1.0, 1.0, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
        CHECK_THROWS_AS(ratio_pdf({0.1, 0.2}, st), std::domain_error);
    }
}

TEST_CASE("simulated ratios follow ratio_pdf (binned chi-square)") {
    SystemConfig sys;
    sys.direct_link_snr_db = 10.0;
    const double p_s = sys.signal_power();
    const ChannelRealization ch = seeded_channel(47, sys);
    const HypothesisStats st = hypothesis_stats(ch, 0, 1, +1, p_s, 1.0);

    const cdouble center = std::conj(st.rho) * std::sqrt(st.sigma1_sq / st.sigma2_sq);
    const double scale = std::sqrt((1.0 - std::norm(st.rho)) * st.sigma1_sq / st.sigma2_sq);
    const std::vector<double> radii{0.6 * scale, 1.2 * scale, 2.0 * scale, 3.2 * scale, 5.0 * scale};
    constexpr int kSectors = 8;
    const int n_bins = static_cast<int>(radii.size()) * kSectors + 1; // + overflow

    // Expected bin masses by composite Simpson on each annular sector.
    std::vector<double> expected(n_bins, 0.0);
    auto sector_mass = [&](double r0, double r1, double t0, double t1) {
        constexpr int kN = 64;
        auto angular = [&](double r) {
            double acc = 0.0;
            for (int k = 0; k <= kN; ++k) {
                const double w = (k == 0 || k == kN) ? 1.0 : (k % 2 ? 4.0 : 2.0);
                const double th = t0 + (t1 - t0) * k / kN;
                acc += w * ratio_pdf(center + std::polar(r, th), st);
            }
            return r * acc * (t1 - t0) / kN / 3.0;
        };
        double acc = 0.0;
        for (int k = 0; k <= kN; ++k) {
            const double w = (k == 0 || k == kN) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            acc += w * angular(r0 + (r1 - r0) * k / kN);
        }
        return acc * (r1 - r0) / kN / 3.0;
    };
    double covered = 0.0;
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double r0 = ri == 0 ? 0.0 : radii[ri - 1];
        for (int s = 0; s < kSectors; ++s) {
            const double t0 = -testq::kPi + 2.0 * testq::kPi * s / kSectors;
            const double t1 = t0 + 2.0 * testq::kPi / kSectors;
            expected[ri * kSectors + s] = sector_mass(r0, radii[ri], t0, t1);
            covered += expected[ri * kSectors + s];
        }
    }
    expected[n_bins - 1] = 1.0 - covered;

    const int n = 1000000;
    std::mt19937_64 rng(1234);
    std::vector<std::int64_t> observed(n_bins, 0);
    for (int i = 0; i < n; ++i) {
        const cdouble s = std_cnormal(rng, p_s);
        const cdouble z1 = st.mu1 * s + std_cnormal(rng, 1.0);
        const cdouble z2 = st.mu2 * s + std_cnormal(rng, 1.0);
        const cdouble d = z1 / z2 - center;
        const double r = std::abs(d);
        int bin = n_bins - 1;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            if (r < radii[ri]) {
                int s_idx = static_cast<int>((std::arg(d) + testq::kPi) / (2.0 * testq::kPi / kSectors));
                s_idx = std::min(std::max(s_idx, 0), kSectors - 1);
                bin = static_cast<int>(ri) * kSectors + s_idx;
                break;
            }
        }
        ++observed[bin];
    }

    double chi_sq = 0.0;
    for (int b = 0; b < n_bins; ++b) {
        const double exp_count = expected[b] * n;
        REQUIRE(exp_count > 5.0);
        const double diff = observed[b] - exp_count;
        chi_sq += diff * diff / exp_count;
    }
    // 99th percentile of chi-square with 40 degrees of freedom.
    CHECK(chi_sq < 63.691);
}

TEST_CASE("linear_noise_pdf shape, normalization and tau form") {
    SystemConfig sys;
    sys.direct_link_snr_db = 15.0;
    const double p_s = sys.signal_power();
    const ChannelRealization ch = seeded_channel(53, sys);

    SUBCASE("maximal at zero and radially decreasing") {
        const double f0 = linear_noise_pdf({0.0, 0.0}, ch, 0, 1, p_s, 1.0);
        double prev = f0;
        for (double r : {0.01, 0.05, 0.2, 1.0, 4.0}) {
            const double f = linear_noise_pdf({r, 0.0}, ch, 0, 1, p_s, 1.0);
            CHECK(f < prev);
            prev = f;
        }
    }

    SUBCASE("normalizes to one") {
        const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, 1.0);
        const double pt = testq::kPi * lin.tau;
        const double radius = std::sqrt(pt * 1e6);
        const double tail = pt / (radius * radius + pt);
        const double mass = testq::disc_integral(
            [&](cdouble w) { return linear_noise_pdf(w, ch, 0, 1, p_s, 1.0); }, {0.0, 0.0}, std::sqrt(pt),
            radius);
        CHECK(mass + tail == doctest::Approx(1.0).epsilon(1e-3));
    }

    SUBCASE("equals tau (|w|^2 + pi tau)^-2 everywhere") {
        const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, 1.0);
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (int i = 0; i < 10; ++i) {
            const cdouble w{u(rng), u(rng)};
            const double direct = linear_noise_pdf(w, ch, 0, 1, p_s, 1.0);
            const double tau_form = lin.tau / std::pow(std::norm(w) + testq::kPi * lin.tau, 2);
            CHECK(direct == doctest::Approx(tau_form).epsilon(1e-12));
        }
    }

    SUBCASE("zero branch gain is rejected") {
        ChannelRealization bad = ch;
        bad.h_sr[0] = {0.0, 0.0};
        CHECK_THROWS_AS(linear_noise_pdf({0.1, 0.1}, bad, 0, 1, p_s, 1.0), std::domain_error);
    }
}

TEST_CASE("error CDF: anchors, total mass, quadrature of the error region") {
    const double tau = 0.37;
    const double h_sq = 1.9;

    CHECK(error_cdf_G(0.0, 0.0, tau, h_sq) == 0.0);
    CHECK(error_cdf_G(kInf, kInf, tau, h_sq) - error_cdf_G(-kInf, kInf, tau, h_sq) -
              error_cdf_G(kInf, -kInf, tau, h_sq) + error_cdf_G(-kInf, -kInf, tau, h_sq) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(error_cdf_G(0.0, 0.0, -1.0, 1.0), std::domain_error);

    // 2-D quadrature of the error density over phi_r < -|h|^2: numerical
    // inner integral over phi_i with analytic tail, adaptive outer integral.
    const double c_sq = testq::kPi * tau * h_sq;
    auto marginal = [&](double pr) {
        const double a = pr * pr + c_sq;
        const double t_cut = std::sqrt(a) * 1e3;
        const double inner = 2.0 * testq::simpson(
                                       [&](double pi_) {
                                           return error_pdf({pr, pi_}, tau, h_sq);
                                       },
                                       0.0, t_cut, 1e-14, 30);
        const double inner_tail = 2.0 * tau * h_sq / (3.0 * t_cut * t_cut * t_cut);
        return inner + inner_tail;
    };
    const double r_cut = std::sqrt(c_sq) * 3e3;
    double region = 0.0;
    double lo = h_sq;
    // geometric panels toward the far tail keep the adaptive rule honest
    while (lo < r_cut) {
        const double hi = std::min(lo * 4.0, r_cut);
        region += testq::simpson([&](double pr) { return marginal(-pr); }, lo, hi, 1e-12, 28);
        lo = hi;
    }
    region += tau * h_sq * testq::kPi / (4.0 * r_cut * r_cut); // outer tail

    CHECK(ber_from_G(h_sq, tau) == doctest::Approx(region).epsilon(1e-6));
}

TEST_CASE("closed-form BER: limits, monotonicity, identity with G") {
    CHECK(closed_form_ber({1.0, 0.0}, 1e-300) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(closed_form_ber({0.0, 0.0}, 0.5) == 0.5);

    double prev = 0.0;
    for (double tau : {0.01, 0.1, 0.5, 2.0, 10.0}) {
        const double val = closed_form_ber({1.0, 0.0}, tau);
        CHECK(val > prev);
        CHECK(val < 0.5);
        prev = val;
    }
    prev = 0.5;
    for (double h : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const double val = closed_form_ber({h, 0.0}, 0.3);
        CHECK(val < prev);
        prev = val;
    }

    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(0.05, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double h_sq = u(rng);
        const double tau = u(rng);
        const double direct = closed_form_ber({std::sqrt(h_sq), 0.0}, tau);
        CHECK(ber_from_G(h_sq, tau) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("closed-form BER matches Monte Carlo on the exact ratio-noise model") {
    SystemConfig sys;
    sys.seed = 61;
    std::mt19937_64 rng(4321);
    for (double snr_db : {10.0, 20.0}) {
        sys.direct_link_snr_db = snr_db;
        const double p_s = sys.signal_power();
        const ChannelRealization ch = seeded_channel(61, sys, snr_db > 15 ? 1 : 0);
        const LinearNoiseStats lin = effective_channel(ch, 0, 1, p_s, 1.0);
        const double expected = closed_form_ber(lin.h_eff, lin.tau);

        const int n = 200000;
        int errors = 0;
        for (int i = 0; i < n; ++i) {
            const int x = rng() & 1 ? 1 : -1;
            const cdouble num = std_cnormal(rng, 1.0) / ch.h_sr[0] - std_cnormal(rng, 1.0) / ch.h_sr[1];
            const cdouble y = lin.h_eff * double(x) + num / std_cnormal(rng, p_s);
            errors += min_distance_detect({y, lin.h_eff, lin.tau}).x_hat != x;
        }
        const double mc = double(errors) / n;
        const double sigma = std::sqrt(expected * (1.0 - expected) / n);
        CHECK(std::abs(mc - expected) < std::max(0.05 * expected, 4.0 * sigma));
    }
}

TEST_CASE("eta: symmetry, degeneracy, BER ordering") {
    SystemConfig sys;
    sys.num_antennas = 4;
    sys.direct_link_snr_db = 10.0;
    const double p_s = sys.signal_power();

    const ChannelRealization ch = seeded_channel(71, sys);
    CHECK(eta(ch, 0, 1) == eta(ch, 1, 0));
    CHECK(eta(ch, 2, 3) == eta(ch, 3, 2));

    ChannelRealization degen = ch;
    degen.h_sr[1] = degen.h_sr[0];
    degen.h_tr[1] = degen.h_tr[0];
    CHECK(std::isinf(eta(degen, 0, 1)));

    // argmin over eta equals argmin over the closed-form BER, every channel.
    for (std::uint32_t trial = 0; trial < 1000; ++trial) {
        const ChannelRealization c = seeded_channel(72, sys, trial);
        int best_eta_i = -1, best_eta_j = -1, best_ber_i = -1, best_ber_j = -1;
        double best_eta = kInf, best_ber = kInf;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const double e = eta(c, i, j);
                if (e < best_eta) {
                    best_eta = e;
                    best_eta_i = i;
                    best_eta_j = j;
                }
                const LinearNoiseStats lin = effective_channel(c, i, j, p_s, 1.0);
                const double b = closed_form_ber(lin.h_eff, lin.tau);
                if (b < best_ber) {
                    best_ber = b;
                    best_ber_i = i;
                    best_ber_j = j;
                }
            }
        }
        CHECK(best_eta_i == best_ber_i);
        CHECK(best_eta_j == best_ber_j);
    }
}

TEST_CASE("magnitude marginal matches its analytic form and normalizes") {
    SystemConfig sys;
    sys.direct_link_snr_db = 12.0;
    const double p_s = sys.signal_power();
    const ChannelRealization ch = seeded_channel(81, sys);
    const HypothesisStats st = hypothesis_stats(ch, 0, 1, +1, p_s, 1.0);

    const double s1 = std::sqrt(st.sigma1_sq);
    const double s2 = std::sqrt(st.sigma2_sq);
    auto analytic = [&](double r) {
        const double a = r * r / st.sigma1_sq + 1.0 / st.sigma2_sq;
        const double b = 2.0 * r * std::abs(st.rho) / (s1 * s2);
        return 2.0 * r * (1.0 - std::norm(st.rho)) * a /
               (st.sigma1_sq * st.sigma2_sq * std::pow(a * a - b * b, 1.5));
    };

    for (double r : {0.05, 0.3, 0.9, 2.0, 7.0})
        CHECK(magnitude_ratio_pdf(r, st) == doctest::Approx(analytic(r)).epsilon(1e-9));

    const double scale = s1 / s2;
    double mass = 0.0;
    double lo = 0.0;
    const double r_cut = scale * 2e3;
    while (lo < r_cut) {
        const double hi = lo == 0.0 ? 0.2 * scale : std::min(lo * 4.0, r_cut);
        mass += testq::simpson([&](double r) { return magnitude_ratio_pdf(r, st); }, lo, hi, 1e-10, 26);
        lo = hi;
    }
    const double tail = (1.0 - std::norm(st.rho)) * st.sigma1_sq / st.sigma2_sq / (r_cut * r_cut);
    CHECK(mass + tail == doctest::Approx(1.0).epsilon(1e-3));
}
