#include "ambc/channel.hpp"

#include <stdexcept>

namespace ambc {

namespace {

cdouble nonzero_cnormal(RandomStream& stream) {
    cdouble z = stream.cnormal(1.0);
    while (z == cdouble{0.0, 0.0}) z = stream.cnormal(1.0); // measure-zero
    return z;
}

} // namespace

ChannelRealization sample_channel(RandomStream& stream, const SystemConfig& config) {
    const int q = config.num_antennas;
    ChannelRealization ch;
    ch.h_sr.resize(q);
    ch.h_tr.resize(q);
    for (int i = 0; i < q; ++i) ch.h_sr[i] = nonzero_cnormal(stream);
    for (int i = 0; i < q; ++i) ch.h_tr[i] = stream.cnormal(1.0);
    ch.h_st = nonzero_cnormal(stream);
    const Amplitudes a = config.amplitudes();
    ch.g = a.alpha * a.a_tr * ch.h_st;
    return ch;
}

void synthesize_block(RandomStream& stream, const ChannelRealization& ch, const std::vector<int>& x_seq,
                      const SystemConfig& config, ReceivedBlock& out) {
    const int q_count = ch.num_antennas();
    const int n_count = static_cast<int>(x_seq.size());
    if (n_count < 1) throw std::invalid_argument("synthesize_block: empty symbol sequence");

    out.num_antennas = q_count;
    out.num_symbols = n_count;
    out.z.resize(static_cast<std::size_t>(q_count) * n_count);
    out.s.resize(n_count);
    out.x = x_seq;

    const double p_s = config.signal_power();
    for (int n = 0; n < n_count; ++n) {
        const cdouble s = stream.cnormal(p_s);
        out.s[n] = s;
        const double x = static_cast<double>(x_seq[n]);
        for (int q = 0; q < q_count; ++q) {
            const cdouble w = stream.cnormal(config.noise_power);
            out.z[static_cast<std::size_t>(q) * n_count + n] = (ch.h_sr[q] + ch.h_tr[q] * ch.g * x) * s + w;
        }
    }
}

ReceivedBlock synthesize_block(RandomStream& stream, const ChannelRealization& ch, const std::vector<int>& x_seq,
                               const SystemConfig& config) {
    ReceivedBlock out;
    synthesize_block(stream, ch, x_seq, config, out);
    return out;
}

} // namespace ambc
