#pragma once

// Solver checks against the exact relaxation solution x(t) = E_beta(-t^beta)
// of D^beta x = -x, x(0) = 1.

#include <vector>

namespace fdml {

/// |x_h(t_end) - E_beta(-t_end^beta)| for the PECE solution on [0, t_end].
[[nodiscard]] double relaxation_error(double beta, double h, double t_end = 1.0, bool use_fft = false);

struct ConvergenceCase {
    double beta = 0.0;
    std::vector<double> steps;
    std::vector<double> errors;
    std::vector<double> observed_orders;  ///< log2 ratios of successive errors
    double required_order = 0.0;         ///< 1 + beta - 0.2
    bool pass = false;
};

struct ClassicalLimitCheck {
    double h = 1e-3;
    double computed = 0.0;
    double expected = 0.0;
    double tolerance = 1e-5;
    bool pass = false;
};

struct OracleReport {
    std::vector<ConvergenceCase> cases;
    ClassicalLimitCheck classical;
    [[nodiscard]] bool pass() const;
};

/// beta in {0.5, 0.7, 0.9} at h in {1e-2, 5e-3, 2.5e-3}, plus beta = 1 at h = 1e-3.
[[nodiscard]] OracleReport run_oracle_suite(bool use_fft = false);

}  // namespace fdml
