#include "ambc/coding.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

cdouble block_channel(const ReceivedCode& rx, int m, int k) {
    return rx.interleaved ? rx.h_per_block[m] : rx.h_per_block[k];
}

double block_tau(const ReceivedCode& rx, int m, int k) {
    return rx.interleaved ? rx.tau_per_block[m] : rx.tau_per_block[k];
}

} // namespace

CodeBlock encode(const std::vector<int>& bits, int m_len, bool interleave) {
    const int k_len = static_cast<int>(bits.size());
    if (k_len < 1) throw std::invalid_argument("encode: need at least one bit");
    if (m_len < 1) throw std::invalid_argument("encode: repetition length must be >= 1");
    if (interleave && m_len != k_len) throw std::invalid_argument("encode: interleaving requires M == K");

    CodeBlock cb;
    cb.bits = bits;
    cb.m_len = m_len;
    cb.k_len = k_len;
    cb.interleaved = interleave;
    cb.tx.resize(static_cast<std::size_t>(m_len) * k_len);
    for (int m = 0; m < m_len; ++m)
        for (int k = 0; k < k_len; ++k)
            cb.tx[static_cast<std::size_t>(m) * k_len + k] = interleave ? bits[m] : bits[k];
    return cb;
}

std::vector<int> transpose_symbols(const std::vector<int>& tx, int m_len, int k_len) {
    std::vector<int> out(tx.size());
    for (int m = 0; m < m_len; ++m)
        for (int k = 0; k < k_len; ++k)
            out[static_cast<std::size_t>(k) * m_len + m] = tx[static_cast<std::size_t>(m) * k_len + k];
    return out;
}

Decision decode_average(const ReceivedCode& rx, int k) {
    if (rx.interleaved) throw std::logic_error("decode_average: needs a constant channel per codeword");
    cdouble mean{0.0, 0.0};
    for (int m = 0; m < rx.m_len; ++m) mean += rx.y(m, k);
    mean /= static_cast<double>(rx.m_len);
    return min_distance_detect({mean, rx.h_per_block[k], rx.tau_per_block[k]});
}

Decision decode_hard(const ReceivedCode& rx, int k) {
    int plus = 0;
    for (int m = 0; m < rx.m_len; ++m) {
        const Decision d = min_distance_detect({rx.y(m, k), block_channel(rx, m, k), block_tau(rx, m, k)});
        if (d.x_hat > 0) ++plus;
    }
    const int minus = rx.m_len - plus;
    if (plus >= minus) return {1, static_cast<double>(plus - minus)};
    return {-1, static_cast<double>(minus - plus)};
}

Decision decode_soft(const ReceivedCode& rx, int k) {
    double cost_minus = 0.0;
    double cost_plus = 0.0;
    for (int m = 0; m < rx.m_len; ++m) {
        const cdouble h = block_channel(rx, m, k);
        const double pt = kPi * block_tau(rx, m, k);
        cost_minus += std::log(std::norm(rx.y(m, k) + h) + pt);
        cost_plus += std::log(std::norm(rx.y(m, k) - h) + pt);
    }
    // Smaller cost wins; equality keeps the per-sample tie convention.
    if (cost_plus < cost_minus) return {1, cost_minus - cost_plus};
    return {-1, cost_plus - cost_minus};
}

} // namespace ambc
