#pragma once

#include "fdml/errors.hpp"

namespace fdml {

/// One-parameter Mittag-Leffler function E_order(z) = sum_k z^k / Gamma(order k + 1)
/// by direct power series with compensated summation.
///
/// Requires 0 < order <= 1 and |z| <= 50. Stops once a term falls below
/// 1e-16 of the partial sum; throws ConvergenceBudgetExceeded after 10000
/// terms. For large negative z the alternating series cancels badly; keep
/// |z| <= 10 where accuracy matters.
[[nodiscard]] double mittag_leffler(double order, double z);

}  // namespace fdml
