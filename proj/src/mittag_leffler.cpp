#include "fdml/mittag_leffler.hpp"

#include "fdml/errors.hpp"

#include <cmath>

namespace fdml {

double mittag_leffler(double order, double z) {
    if (!(order > 0.0 && order <= 1.0)) {
        throw InvalidArgument("Mittag-Leffler order must lie in (0, 1]");
    }
    if (!std::isfinite(z) || std::abs(z) > 50.0) {
        throw InvalidArgument("Mittag-Leffler argument must satisfy |z| <= 50");
    }
    if (z == 0.0) {
        return 1.0;
    }

    constexpr int max_terms = 10000;
    constexpr double rel_tol = 1e-16;
    const double log_abs_z = std::log(std::abs(z));

    double sum = 1.0;
    double compensation = 0.0;
    for (int k = 1; k <= max_terms; ++k) {
        // |z|^k / Gamma(order k + 1) in log space; Gamma overflows long before the series ends.
        const double magnitude = std::exp(k * log_abs_z - std::lgamma(order * k + 1.0));
        const double term = (z < 0.0 && (k % 2 == 1)) ? -magnitude : magnitude;

        const double adjusted = term - compensation;
        const double next = sum + adjusted;
        compensation = (next - sum) - adjusted;
        sum = next;

        if (magnitude < rel_tol * std::abs(sum)) {
            return sum;
        }
    }
    throw ConvergenceBudgetExceeded("Mittag-Leffler series did not converge within 10000 terms");
}

}  // namespace fdml
