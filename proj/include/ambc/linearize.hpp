#ifndef AMBC_LINEARIZE_HPP
#define AMBC_LINEARIZE_HPP

#include "ambc/channel.hpp"
#include "ambc/ratio_stats.hpp"

namespace ambc {

// One compensated log-ratio observation together with the block's linear
// model parameters.
struct LinearizedSample {
    cdouble y;
    cdouble h_eff;
    double tau;
};

enum class Compensation {
    kEstimated, // +/-2pi correction from the phase comparison against the bias
    kNone,      // raw principal-value log ratio minus bias
    kPerfect    // oracle: exact factor decomposition using the ambient symbol
};

// h = (h_tr[i]/h_sr[i] - h_tr[j]/h_sr[j]) g and
// tau = (1/|h_sr[i]|^2 + 1/|h_sr[j]|^2) N_w / (pi P_s).
LinearNoiseStats effective_channel(const ChannelRealization& ch, int i, int j, double p_s, double n_w);

// y_hat = Log(z_i/z_j) - Log(h_sr[i]/h_sr[j]) with principal-value logs,
// then y = y_hat + j*dphi where dphi in {-2pi, 0, +2pi} undoes the wrap
// detected by comparing the two principal phases. Boundary differences of
// exactly +/-pi map to dphi = 0. Throws std::domain_error when z_j == 0.
LinearizedSample linearize_sample(cdouble z_i, cdouble z_j, const ChannelRealization& ch, int i, int j, double p_s,
                                  double n_w, Compensation mode = Compensation::kEstimated);

// Per-block state for linearizing many samples against one realization: the
// bias log and the model parameters are block constants.
class BlockLinearizer {
  public:
    BlockLinearizer(const ChannelRealization& ch, int i, int j, double p_s, double n_w);

    LinearizedSample operator()(cdouble z_i, cdouble z_j, Compensation mode = Compensation::kEstimated) const;

    const LinearNoiseStats& stats() const { return stats_; }

  private:
    LinearNoiseStats stats_;
    cdouble log_bias_;
    double arg_bias_;
};

// Perfect-compensation oracle: reconstructs the unwrapped log ratio from the
// factor decomposition z_q = h_sr[q] (1 + a_q) s. Needs the ambient symbol,
// so it is usable only where ground truth is available.
LinearizedSample linearize_sample_perfect(cdouble z_i, cdouble z_j, cdouble s, const ChannelRealization& ch, int i,
                                          int j, double p_s, double n_w);

} // namespace ambc

#endif
