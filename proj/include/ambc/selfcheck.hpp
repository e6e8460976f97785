#ifndef AMBC_SELFCHECK_HPP
#define AMBC_SELFCHECK_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ambc {

struct SelfCheckOptions {
    std::uint64_t seed = 7;
    // Negative-control hook for tests: perturbs the closed-form BER constant
    // inside the identity check so the check must fail.
    bool tamper_ber_constant = false;
};

struct SelfCheckResult {
    std::string name;
    bool passed;
    double worst_error;
    double tolerance;
};

struct SelfCheckReport {
    std::vector<SelfCheckResult> checks;
    bool all_passed() const;
};

// Fast analytic sanity suite: density normalizations by quadrature, the
// rectangle-rule identity of the error CDF against the closed-form BER, and
// a small Monte Carlo run against the closed form.
SelfCheckReport run_selfcheck(const SelfCheckOptions& options = {});

} // namespace ambc

#endif
