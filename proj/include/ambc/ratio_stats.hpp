#ifndef AMBC_RATIO_STATS_HPP
#define AMBC_RATIO_STATS_HPP

#include <complex>

#include "ambc/channel.hpp"

namespace ambc {

// Second-order statistics of the two branch signals under one Tag symbol
// hypothesis. sigma_q^2 = |mu_q|^2 P_s + N_w and rho is the complex
// correlation coefficient conj(mu_1) mu_2 P_s / (sigma_1 sigma_2), where
// index 1 is the numerator branch and 2 the denominator branch.
struct HypothesisStats {
    double sigma1_sq;
    double sigma2_sq;
    cdouble rho;
    cdouble mu1;
    cdouble mu2;
};

// Parameters of the linearized observation model y = h x + w.
struct LinearNoiseStats {
    double tau;
    cdouble h_eff;
};

HypothesisStats hypothesis_stats(const ChannelRealization& ch, int i, int j, int x, double p_s, double n_w);

// Density of the complex ratio z_i / z_j of two correlated zero-mean complex
// Gaussians. Throws std::domain_error when |rho| >= 1.
double ratio_pdf(cdouble lambda, const HypothesisStats& stats);

// Density of the post-linearization noise w = (w_i/h_sr_i - w_j/h_sr_j)/s,
// equal to tau (|w|^2 + pi tau)^-2. Throws std::domain_error when either
// branch gain is zero.
double linear_noise_pdf(cdouble w, const ChannelRealization& ch, int i, int j, double p_s, double n_w);

// Density of the error variable phi = h x w, with |h|^2 = h_abs_sq.
double error_pdf(cdouble phi, double tau, double h_abs_sq);

// Mixed antiderivative G of error_pdf: the probability of the rectangle
// [a1,a2] x [b1,b2] is G(a2,b2) - G(a1,b2) - G(a2,b1) + G(a1,b1).
// Arguments may be +/-inf; limits are evaluated analytically, with the
// doubly infinite corners taken as iterated limits so that the four-corner
// combination over the whole plane equals 1.
double error_cdf_G(double phi_r, double phi_i, double tau, double h_abs_sq);

// 1/2 - 1/2 (pi tau / |h|^2 + 1)^(-1/2); returns 1/2 at h = 0 by continuity.
double closed_form_ber(cdouble h_eff, double tau);

// Channel-only selection metric, monotone in the pairwise BER. +inf when the
// two branch ratios coincide (a valid ordering value).
double eta(const ChannelRealization& ch, int i, int j);

// Density of |z_i / z_j| obtained by marginalizing ratio_pdf over phase with
// an n_theta-point periodic trapezoid rule.
double magnitude_ratio_pdf(double lambda_abs, const HypothesisStats& stats, int n_theta = 256);

} // namespace ambc

#endif
