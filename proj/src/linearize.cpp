#include "ambc/linearize.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

LinearNoiseStats effective_channel(const ChannelRealization& ch, int i, int j, double p_s, double n_w) {
    const double g1 = std::norm(ch.h_sr[i]);
    const double g2 = std::norm(ch.h_sr[j]);
    if (g1 == 0.0 || g2 == 0.0) throw std::domain_error("effective_channel: zero branch gain");
    const cdouble h = (ch.h_tr[i] / ch.h_sr[i] - ch.h_tr[j] / ch.h_sr[j]) * ch.g;
    const double tau = (1.0 / g1 + 1.0 / g2) * n_w / (kPi * p_s);
    return {tau, h};
}

BlockLinearizer::BlockLinearizer(const ChannelRealization& ch, int i, int j, double p_s, double n_w)
    : stats_(effective_channel(ch, i, j, p_s, n_w)) {
    const cdouble bias_ratio = ch.h_sr[i] / ch.h_sr[j];
    log_bias_ = std::log(bias_ratio);
    arg_bias_ = log_bias_.imag();
}

LinearizedSample BlockLinearizer::operator()(cdouble z_i, cdouble z_j, Compensation mode) const {
    if (z_j == cdouble{0.0, 0.0}) throw std::domain_error("linearize_sample: z_j is zero");
    const cdouble ratio = z_i / z_j;
    const cdouble log_ratio = std::log(ratio);
    const cdouble y_hat = log_ratio - log_bias_;

    double dphi = 0.0;
    if (mode == Compensation::kEstimated) {
        // Both principal phases live in (-pi, pi]; a difference outside that
        // range means the observed ratio wrapped relative to the bias.
        const double diff = log_ratio.imag() - arg_bias_;
        if (diff < -kPi)
            dphi = kTwoPi;
        else if (diff > kPi)
            dphi = -kTwoPi;
    }
    return {y_hat + cdouble{0.0, dphi}, stats_.h_eff, stats_.tau};
}

LinearizedSample linearize_sample(cdouble z_i, cdouble z_j, const ChannelRealization& ch, int i, int j, double p_s,
                                  double n_w, Compensation mode) {
    return BlockLinearizer(ch, i, j, p_s, n_w)(z_i, z_j, mode);
}

LinearizedSample linearize_sample_perfect(cdouble z_i, cdouble z_j, cdouble s, const ChannelRealization& ch, int i,
                                          int j, double p_s, double n_w) {
    if (z_j == cdouble{0.0, 0.0}) throw std::domain_error("linearize_sample_perfect: z_j is zero");
    if (s == cdouble{0.0, 0.0}) throw std::domain_error("linearize_sample_perfect: ambient symbol is zero");
    const LinearNoiseStats lin = effective_channel(ch, i, j, p_s, n_w);
    // z_q = h_sr[q] (1 + a_q) s, so each factor 1 + a_q is recovered exactly
    // and its principal log carries no 2pi ambiguity.
    const cdouble f_i = z_i / (ch.h_sr[i] * s);
    const cdouble f_j = z_j / (ch.h_sr[j] * s);
    return {std::log(f_i) - std::log(f_j), lin.h_eff, lin.tau};
}

} // namespace ambc
