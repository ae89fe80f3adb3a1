#pragma once

// Commensurate Caputo fractional ODE solver.
//
// The initial value problem  D^beta y(t) = f(t, y),  y(t0) = y0,  0 < beta <= 1,
// is rewritten as the Volterra equation
//
//     y(t) = y0 + 1/Gamma(beta) * int_{t0}^{t} (t - s)^(beta - 1) f(s, y(s)) ds
//
// and discretised with product integration on a uniform grid: piecewise-constant
// interpolation of f for the predictor, piecewise-linear for the corrector
// (fractional Adams-Bashforth-Moulton, PECE). The O(N^2) history sums can be
// evaluated either directly or with FFT-based convolution.

#include "fdml/errors.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fdml {

/// Order of the Caputo derivative, 0 < beta <= 1.
class FractionalOrder {
public:
    explicit FractionalOrder(double beta);

    [[nodiscard]] double value() const noexcept { return beta_; }

    friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

private:
    double beta_;
};

struct SolverConfig {
    double t_start = 0.0;
    double t_end = 6000.0;
    double h = 0.01;
    int corrector_iterations = 1;
    bool use_fft = false;

    /// Throws InvalidArgument when the configuration is unusable.
    void validate() const;

    /// Number of steps N; the grid has N + 1 nodes.
    [[nodiscard]] std::size_t steps() const;
};

/// Uniformly sampled solution. States are stored row-major: one row per node.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(double t_start, double h, std::size_t dimension);

    void reserve(std::size_t nodes);
    void push_back(std::span<const double> state);

    [[nodiscard]] std::size_t size() const noexcept { return dimension_ == 0 ? 0 : values_.size() / dimension_; }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
    [[nodiscard]] double step() const noexcept { return h_; }

    [[nodiscard]] double time(std::size_t k) const noexcept { return t_start_ + static_cast<double>(k) * h_; }
    [[nodiscard]] std::span<const double> state(std::size_t k) const;
    [[nodiscard]] double at(std::size_t k, std::size_t component) const { return state(k)[component]; }
    [[nodiscard]] std::span<const double> back() const { return state(size() - 1); }

    /// Samples of one component, in time order.
    [[nodiscard]] std::vector<double> component(std::size_t index) const;
    [[nodiscard]] std::vector<double> times() const;
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;

private:
    double t_start_ = 0.0;
    double h_ = 0.0;
    std::size_t dimension_ = 0;
    std::vector<double> values_;
};

/// Thrown when the solution leaves the finite range. Carries every node that
/// was computed before the first non-finite state.
class NonFiniteState : public NumericalError {
public:
    NonFiniteState(const std::string& what, Trajectory partial)
        : NumericalError(what), partial_(std::move(partial)) {}

    [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Right-hand side f(t, y). Must return a vector of the same dimension as y.
using Rhs = std::function<std::vector<double>(double, std::span<const double>)>;

/// Product-integration weights for the step that produces node n + 1.
///
/// predictor[j] = (h^beta / beta) * ((n + 1 - j)^beta - (n - j)^beta),  j = 0..n
/// corrector[j] = a_{j,n+1} (unscaled),                                j = 0..n+1
/// The corrector contribution is corrector_scale * sum_j corrector[j] f_j, with
/// corrector_scale = h^beta / Gamma(beta + 2). The predictor contribution is
/// sum_j predictor[j] f_j / Gamma(beta).
struct ProductWeights {
    std::vector<double> predictor;
    std::vector<double> corrector;
    double corrector_scale = 0.0;
};

[[nodiscard]] ProductWeights pi_weights(FractionalOrder order, std::size_t n, double h = 1.0);

/// Solves D^beta y = rhs(t, y) on the grid t_k = t_start + k h.
///
/// Throws NonFiniteState (with the partial trajectory) on blow-up and
/// DimensionMismatch when rhs returns a vector of the wrong size.
[[nodiscard]] Trajectory solve_fde(const Rhs& rhs, FractionalOrder order, const SolverConfig& config,
                                   std::span<const double> y0);

/// Per-component orders are accepted only when they are all equal; an
/// incommensurate order vector throws UnsupportedOption.
[[nodiscard]] Trajectory solve_fde(const Rhs& rhs, std::span<const double> orders, const SolverConfig& config,
                                   std::span<const double> y0);

}  // namespace fdml
