#ifndef AMBC_SELECTION_HPP
#define AMBC_SELECTION_HPP

#include "ambc/channel.hpp"

namespace ambc {

// An antenna pair i < j (0-based) with its selection metric.
struct RatioChoice {
    int i;
    int j;
    double eta_value;
};

// Exhaustive search of the Q(Q-1)/2 ordered pairs for the smallest eta.
// First-seen (lexicographically smallest) pair wins ties. Throws
// std::runtime_error when every pair is degenerate (eta = +inf).
RatioChoice select_ratio(const ChannelRealization& ch);

} // namespace ambc

#endif
