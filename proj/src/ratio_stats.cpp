#include "ambc/ratio_stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambc {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

HypothesisStats hypothesis_stats(const ChannelRealization& ch, int i, int j, int x, double p_s, double n_w) {
    if (i == j) throw std::invalid_argument("hypothesis_stats: branches must differ");
    const double xr = static_cast<double>(x);
    const cdouble mu1 = ch.h_sr[i] + ch.h_tr[i] * ch.g * xr;
    const cdouble mu2 = ch.h_sr[j] + ch.h_tr[j] * ch.g * xr;
    const double s1 = std::norm(mu1) * p_s + n_w;
    const double s2 = std::norm(mu2) * p_s + n_w;
    const cdouble rho = std::conj(mu1) * mu2 * p_s / std::sqrt(s1 * s2);
    return {s1, s2, rho, mu1, mu2};
}

double ratio_pdf(cdouble lambda, const HypothesisStats& stats) {
    const double rho_sq = std::norm(stats.rho);
    if (rho_sq >= 1.0) throw std::domain_error("ratio_pdf: |rho| must be < 1");
    const double s1 = stats.sigma1_sq;
    const double s2 = stats.sigma2_sq;
    const double cross = stats.rho.real() * lambda.real() - stats.rho.imag() * lambda.imag();
    const double q = std::norm(lambda) / s1 + 1.0 / s2 - 2.0 * cross / std::sqrt(s1 * s2);
    return (1.0 - rho_sq) / (kPi * s1 * s2 * q * q);
}

double linear_noise_pdf(cdouble w, const ChannelRealization& ch, int i, int j, double p_s, double n_w) {
    const double g1 = std::norm(ch.h_sr[i]);
    const double g2 = std::norm(ch.h_sr[j]);
    if (g1 == 0.0 || g2 == 0.0) throw std::domain_error("linear_noise_pdf: zero branch gain");
    const double inv_sum = 1.0 / g1 + 1.0 / g2;
    const double scale = inv_sum * n_w / p_s; // = pi * tau
    const double d = std::norm(w) + scale;
    return n_w / (kPi * p_s) * inv_sum / (d * d);
}

double error_pdf(cdouble phi, double tau, double h_abs_sq) {
    const double d = std::norm(phi) + kPi * tau * h_abs_sq;
    return tau * h_abs_sq / (d * d);
}

namespace {

// One half of G. The second argument controls both the gamma factor and the
// arctan denominator; infinite arguments take their analytic limits, and the
// doubly infinite case uses the iterated limit (inner argument first), which
// lands on sign(a) * pi/4 for the arctan term.
double zeta(double a, double b, double c_sq) {
    const bool a_inf = std::isinf(a);
    const bool b_inf = std::isinf(b);
    double gamma_term;
    double atan_term;
    if (b_inf) {
        gamma_term = b > 0 ? 1.0 : -1.0;
        if (a_inf)
            atan_term = (a > 0 ? 1.0 : -1.0) * kPi / 4.0;
        else
            atan_term = 0.0;
    } else {
        const double s = std::sqrt(c_sq + b * b);
        gamma_term = b / s;
        if (a_inf)
            atan_term = (a > 0 ? 1.0 : -1.0) * kPi / 2.0;
        else
            atan_term = std::atan(a / s);
    }
    return gamma_term * atan_term / (2.0 * kPi);
}

} // namespace

double error_cdf_G(double phi_r, double phi_i, double tau, double h_abs_sq) {
    if (!(tau > 0.0)) throw std::domain_error("error_cdf_G: tau must be positive");
    const double c_sq = kPi * tau * h_abs_sq;
    return zeta(phi_r, phi_i, c_sq) + zeta(phi_i, phi_r, c_sq);
}

double closed_form_ber(cdouble h_eff, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("closed_form_ber: tau must be positive");
    const double h_sq = std::norm(h_eff);
    if (h_sq == 0.0) return 0.5;
    return 0.5 - 0.5 / std::sqrt(kPi * tau / h_sq + 1.0);
}

double eta(const ChannelRealization& ch, int i, int j) {
    if (i == j) throw std::invalid_argument("eta: branches must differ");
    const double g1 = std::norm(ch.h_sr[i]);
    const double g2 = std::norm(ch.h_sr[j]);
    if (g1 == 0.0 || g2 == 0.0) throw std::domain_error("eta: zero branch gain");
    const cdouble diff = ch.h_tr[i] / ch.h_sr[i] - ch.h_tr[j] / ch.h_sr[j];
    const double denom = std::norm(diff);
    const double num = 1.0 / g1 + 1.0 / g2;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return num / denom;
}

double magnitude_ratio_pdf(double lambda_abs, const HypothesisStats& stats, int n_theta) {
    if (lambda_abs < 0.0) throw std::domain_error("magnitude_ratio_pdf: |lambda| must be >= 0");
    // f_R(r) = r * integral over theta of f(r e^{j theta}); the integrand is
    // smooth and periodic, so the uniform trapezoid rule converges fast.
    double acc = 0.0;
    const double step = 2.0 * kPi / n_theta;
    for (int k = 0; k < n_theta; ++k) {
        const double th = k * step;
        acc += ratio_pdf({lambda_abs * std::cos(th), lambda_abs * std::sin(th)}, stats);
    }
    return lambda_abs * acc * step;
}

} // namespace ambc
