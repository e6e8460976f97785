#ifndef AMBC_CODING_HPP
#define AMBC_CODING_HPP

#include <vector>

#include "ambc/detectors.hpp"

namespace ambc {

// One repetition super-block. tx is M x K, slot-major: tx(m, k) is the
// symbol sent during slot m of coherence block k. Without interleaving,
// block k carries codeword k, so column k is constant bits[k]; with
// interleaving (M == K) the matrix is transposed and block b carries one
// symbol of every codeword.
struct CodeBlock {
    std::vector<int> bits; // K information bits
    std::vector<int> tx;   // M * K symbols, tx[m * K + k]
    int m_len = 0;
    int k_len = 0;
    bool interleaved = false;

    int at(int m, int k) const { return tx[static_cast<std::size_t>(m) * k_len + k]; }
};

// Linearized observations of one super-block, arranged so that codeword k
// is column k of y_matrix. Row m came from coherence block m when
// interleaved, otherwise column k came entirely from block k.
struct ReceivedCode {
    std::vector<cdouble> y_matrix;    // M * K, y_matrix[m * K + k]
    std::vector<cdouble> h_per_block; // channel of block m (interleaved) or of codeword k
    std::vector<double> tau_per_block;
    int m_len = 0;
    int k_len = 0;
    bool interleaved = false;

    const cdouble& y(int m, int k) const { return y_matrix[static_cast<std::size_t>(m) * k_len + k]; }
};

// Repetition expansion, optionally transposed. Interleaving requires M == K.
CodeBlock encode(const std::vector<int>& bits, int m_len, bool interleave);

// Transposes an M x K symbol matrix; applying it twice restores the input.
std::vector<int> transpose_symbols(const std::vector<int>& tx, int m_len, int k_len);

// Mean of the M observations, then minimum distance against the codeword's
// constant channel. Non-interleaved input only.
Decision decode_average(const ReceivedCode& rx, int k);

// Per-observation minimum distance, then majority vote; exact ties go to +1.
Decision decode_hard(const ReceivedCode& rx, int k);

// argmin_x sum_m log(|y_m - h_m x|^2 + pi tau_m); ties go to -1.
Decision decode_soft(const ReceivedCode& rx, int k);

} // namespace ambc

#endif
