#include "ambc/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ambc {

Amplitudes derive_amplitudes(double alpha_loss_db, double relative_snr_db) {
    const double alpha = std::pow(10.0, -alpha_loss_db / 20.0);
    const double a_tr = 1.0 / (alpha * std::pow(10.0, relative_snr_db / 20.0));
    return {alpha, a_tr};
}

// P_s = gamma_d on the linear scale, under the N_w = 1 normalization.
// noise_power scales only the noise draws, so driving it to zero reaches the
// noiseless limit at a fixed signal level.
double SystemConfig::signal_power() const { return std::pow(10.0, direct_link_snr_db / 10.0); }

Amplitudes SystemConfig::amplitudes() const { return derive_amplitudes(alpha_loss_db, relative_snr_db); }

void SystemConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("SystemConfig: " + msg); };
    if (!std::isfinite(direct_link_snr_db)) fail("direct_link_snr_db must be finite");
    if (!std::isfinite(relative_snr_db)) fail("relative_snr_db must be finite");
    if (!std::isfinite(alpha_loss_db)) fail("alpha_loss_db must be finite");
    if (num_antennas < 2) fail("num_antennas must be >= 2");
    if (repetition_length < 1) fail("repetition_length must be >= 1");
    if (coherence_length < 1) fail("coherence_length must be >= 1");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) fail("noise_power must be positive");
}

} // namespace ambc
