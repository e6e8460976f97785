#include "ambc/selection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambc/ratio_stats.hpp"

namespace ambc {

RatioChoice select_ratio(const ChannelRealization& ch) {
    const int q = ch.num_antennas();
    if (q < 2) throw std::invalid_argument("select_ratio: need at least two antennas");

    RatioChoice best{-1, -1, std::numeric_limits<double>::infinity()};
    // Visit pairs in lexicographic order so a strict update keeps the
    // lexicographically smallest minimizer on ties.
    for (int i = 0; i + 1 < q; ++i) {
        for (int j = i + 1; j < q; ++j) {
            const double value = eta(ch, i, j);
            if (value < best.eta_value) best = {i, j, value};
        }
    }
    if (!std::isfinite(best.eta_value)) throw std::runtime_error("select_ratio: all pairs degenerate");
    return best;
}

} // namespace ambc
