#ifndef AMBC_CHANNEL_HPP
#define AMBC_CHANNEL_HPP

#include <complex>
#include <vector>

#include "ambc/config.hpp"
#include "ambc/rng.hpp"

namespace ambc {

using cdouble = std::complex<double>;

// Fading coefficients of one coherence block. Immutable after sampling.
// g folds the Tag-side amplitude factors into the source->Tag fade, so the
// composite backscatter channel at antenna q is h_tr[q] * g * x.
struct ChannelRealization {
    std::vector<cdouble> h_sr; // source -> Reader, per antenna
    std::vector<cdouble> h_tr; // Tag -> Reader, per antenna
    cdouble h_st;              // source -> Tag
    cdouble g;                 // alpha * a_tr * h_st

    int num_antennas() const { return static_cast<int>(h_sr.size()); }
};

// One block of received samples. s and x are ground truth retained for
// oracle checks and BER scoring; detector entry points never take them.
struct ReceivedBlock {
    std::vector<cdouble> z; // Q x N, antenna-major: z[q * N + n]
    std::vector<cdouble> s; // ambient symbols
    std::vector<int> x;     // Tag symbol under each ambient symbol, +/-1
    int num_antennas = 0;
    int num_symbols = 0;

    const cdouble& at(int q, int n) const { return z[static_cast<std::size_t>(q) * num_symbols + n]; }
};

// All coefficients i.i.d. CN(0,1); exact-zero draws of h_sr[q] or h_st are
// rejected and resampled because reciprocals of them appear downstream.
ChannelRealization sample_channel(RandomStream& stream, const SystemConfig& config);

// z_q(n) = (h_sr[q] + h_tr[q] g x(n)) s(n) + w_q(n), s ~ CN(0,P_s),
// w ~ CN(0,N_w). Draw order per symbol: s first, then w for q = 0..Q-1.
void synthesize_block(RandomStream& stream, const ChannelRealization& ch, const std::vector<int>& x_seq,
                      const SystemConfig& config, ReceivedBlock& out);

ReceivedBlock synthesize_block(RandomStream& stream, const ChannelRealization& ch, const std::vector<int>& x_seq,
                               const SystemConfig& config);

} // namespace ambc

#endif
