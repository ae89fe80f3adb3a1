#include "fdml/validation.hpp"

#include "fdml/fde.hpp"
#include "fdml/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>

namespace fdml {

namespace {

std::vector<double> relaxation(double /*t*/, std::span<const double> y) { return {-y[0]}; }

double solve_relaxation(double beta, double h, double t_end, bool use_fft) {
    SolverConfig config;
    config.t_start = 0.0;
    config.t_end = t_end;
    config.h = h;
    config.use_fft = use_fft;
    const std::vector<double> y0{1.0};
    const auto traj = solve_fde(relaxation, FractionalOrder(beta), config, y0);
    return traj.back()[0];
}

}  // namespace

double relaxation_error(double beta, double h, double t_end, bool use_fft) {
    const double exact = mittag_leffler(beta, -std::pow(t_end, beta));
    return std::abs(solve_relaxation(beta, h, t_end, use_fft) - exact);
}

bool OracleReport::pass() const {
    return classical.pass && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.pass; });
}

OracleReport run_oracle_suite(bool use_fft) {
    OracleReport report;
    for (const double beta : {0.5, 0.7, 0.9}) {
        ConvergenceCase c;
        c.beta = beta;
        c.steps = {1e-2, 5e-3, 2.5e-3};
        c.required_order = 1.0 + beta - 0.2;
        for (const double h : c.steps) {
            c.errors.push_back(relaxation_error(beta, h, 1.0, use_fft));
        }
        for (std::size_t i = 1; i < c.errors.size(); ++i) {
            c.observed_orders.push_back(std::log2(c.errors[i - 1] / c.errors[i]));
        }
        c.pass = std::all_of(c.observed_orders.begin(), c.observed_orders.end(),
                             [&](double order) { return order >= c.required_order; });
        report.cases.push_back(std::move(c));
    }
    auto& cl = report.classical;
    cl.computed = solve_relaxation(1.0, cl.h, 1.0, use_fft);
    cl.expected = std::exp(-1.0);
    cl.pass = std::abs(cl.computed - cl.expected) < cl.tolerance;
    return report;
}

}  // namespace fdml
