#ifndef AMBC_DETECTORS_HPP
#define AMBC_DETECTORS_HPP

#include <span>

#include "ambc/channel.hpp"
#include "ambc/linearize.hpp"
#include "ambc/ratio_stats.hpp"

namespace ambc {

// A single bit decision. score_margin is |score(best) - score(other)| in the
// detector's own score units, zero on a tie.
struct Decision {
    int x_hat;
    double score_margin;
};

// Likelihood-ratio detector on the raw complex ratio. Ties go to -1.
Decision ml_detect_ratio(cdouble lambda, const HypothesisStats& stats_minus, const HypothesisStats& stats_plus);
Decision ml_detect_ratio(cdouble lambda, const ChannelRealization& ch, int i, int j, double p_s, double n_w);

// argmin_x |y - h x|^2 on the linearized model, i.e. sign of Re{y conj(h)}
// with Re = 0 mapped to -1.
Decision min_distance_detect(const LinearizedSample& sample);

// Likelihood comparison on |lambda| with the phase numerically marginalized
// out of the ratio density. Magnitude-only baseline; ties go to -1.
Decision magnitude_ratio_detect(double lambda_abs, const HypothesisStats& stats_minus,
                                const HypothesisStats& stats_plus);
Decision magnitude_ratio_detect(double lambda_abs, const ChannelRealization& ch, int i, int j, double p_s,
                                double n_w);

// Averaged-power baseline on a single branch: T = mean |z(n)|^2 compared
// under the two known per-hypothesis variances via the Gamma likelihood of
// the averaged power. Ties go to -1.
Decision energy_detect(std::span<const cdouble> z_branch, const ChannelRealization& ch, int branch, double p_s,
                       double n_w);

} // namespace ambc

#endif
