#ifndef AMBC_CONFIG_HPP
#define AMBC_CONFIG_HPP

#include <cstdint>

namespace ambc {

// Tag amplitude loss and Tag->Reader large-scale gain, both linear amplitude
// factors. The pair satisfies 1 / (alpha^2 * a_tr^2) = relative SNR (linear).
struct Amplitudes {
    double alpha;
    double a_tr;
};

// dB arguments are power ratios except alpha_loss_db, which is an amplitude
// loss applied to the backscattered wave (alpha multiplies amplitude, the
// relative SNR uses alpha^2).
Amplitudes derive_amplitudes(double alpha_loss_db, double relative_snr_db);

// All scenario scalars for one simulated system.
struct SystemConfig {
    double direct_link_snr_db = 10.0; // gamma_d = P_s / N_w
    double relative_snr_db = 40.0;    // direct-to-backscatter power ratio
    double alpha_loss_db = 1.1;       // Tag hardware implementation loss
    int num_antennas = 2;             // Q
    int repetition_length = 1;        // M, ambient symbols per Tag bit
    int coherence_length = 1;         // K, symbols per fading block
    double noise_power = 1.0;         // N_w; P_s = gamma_d * N_w
    std::uint64_t seed = 1;

    double signal_power() const; // P_s, linear
    Amplitudes amplitudes() const;

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

} // namespace ambc

#endif
