#pragma once

// Reference computations shared by the unit tests and the acceptance binary.
// They deliberately avoid the library's closed forms.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <numbers>

namespace fdml::oracle {

/// Literal Matignon test: every eigenvalue satisfies |arg lambda| > beta pi / 2.
inline bool matignon_stable(const Eigen::MatrixXd& jacobian, double beta) {
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(jacobian, false);
    const double bound = beta * std::numbers::pi / 2.0;
    for (const std::complex<double>& lambda : solver.eigenvalues()) {
        if (!(std::abs(std::arg(lambda)) > bound)) {
            return false;
        }
    }
    return true;
}

/// E_beta(-t^beta) by its power series in long double.
inline double relaxation_exact(double beta, double t) {
    const long double z = -std::pow(static_cast<long double>(t), static_cast<long double>(beta));
    long double sum = 0.0L;
    long double power = 1.0L;
    for (int k = 0; k < 200; ++k) {
        sum += power / std::tgamma(static_cast<long double>(beta) * k + 1.0L);
        power *= z;
    }
    return static_cast<double>(sum);
}

}  // namespace fdml::oracle
