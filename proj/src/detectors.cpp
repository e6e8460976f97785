#include "ambc/detectors.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

namespace {

Decision pick(double score_minus, double score_plus) {
    // ">=" keeps ties on -1 across all per-sample detectors.
    if (score_minus >= score_plus) return {-1, score_minus - score_plus};
    return {1, score_plus - score_minus};
}

} // namespace

Decision ml_detect_ratio(cdouble lambda, const HypothesisStats& stats_minus, const HypothesisStats& stats_plus) {
    return pick(ratio_pdf(lambda, stats_minus), ratio_pdf(lambda, stats_plus));
}

Decision ml_detect_ratio(cdouble lambda, const ChannelRealization& ch, int i, int j, double p_s, double n_w) {
    return ml_detect_ratio(lambda, hypothesis_stats(ch, i, j, -1, p_s, n_w),
                           hypothesis_stats(ch, i, j, +1, p_s, n_w));
}

Decision min_distance_detect(const LinearizedSample& sample) {
    const double proj = sample.y.real() * sample.h_eff.real() + sample.y.imag() * sample.h_eff.imag();
    // |y - h|^2 vs |y + h|^2 differ by 4 Re{y conj(h)}.
    if (proj > 0.0) return {1, 4.0 * proj};
    return {-1, -4.0 * proj};
}

Decision magnitude_ratio_detect(double lambda_abs, const HypothesisStats& stats_minus,
                                const HypothesisStats& stats_plus) {
    return pick(magnitude_ratio_pdf(lambda_abs, stats_minus), magnitude_ratio_pdf(lambda_abs, stats_plus));
}

Decision magnitude_ratio_detect(double lambda_abs, const ChannelRealization& ch, int i, int j, double p_s,
                                double n_w) {
    return magnitude_ratio_detect(lambda_abs, hypothesis_stats(ch, i, j, -1, p_s, n_w),
                                  hypothesis_stats(ch, i, j, +1, p_s, n_w));
}

Decision energy_detect(std::span<const cdouble> z_branch, const ChannelRealization& ch, int branch, double p_s,
                       double n_w) {
    if (z_branch.empty()) throw std::invalid_argument("energy_detect: empty block");
    double t = 0.0;
    for (const cdouble& z : z_branch) t += std::norm(z);
    t /= static_cast<double>(z_branch.size());

    // Per-sample power is exponential with mean sigma^2(x); the averaged
    // power is Gamma-distributed and its log-likelihood at T reduces to
    // -M (log sigma^2 + T / sigma^2) + const.
    auto loglik = [&](int x) {
        const double var = std::norm(ch.h_sr[branch] + ch.h_tr[branch] * ch.g * double(x)) * p_s + n_w;
        return -(std::log(var) + t / var);
    };
    const double score_minus = loglik(-1);
    const double score_plus = loglik(+1);
    if (score_minus >= score_plus) return {-1, score_minus - score_plus};
    return {1, score_plus - score_minus};
}

} // namespace ambc
