#pragma once

// Denatured Morris-Lecar (dML) neuron vector fields: a single cell and two
// identical cells coupled either linearly or through a sigmoidal synapse.
// All systems are autonomous; the time argument exists for solver uniformity.

#include "fdml/fde.hpp"

#include <array>
#include <span>
#include <string_view>
#include <variant>

namespace fdml {

/// Local neuron parameters. Defaults are the standard parameter set.
struct DmlParams {
    double A = 0.0041;     ///< recovery amplitude, > 0
    double alpha = 5.276;  ///< exponential rate, > 0
    double gamma = 0.3;    ///< recovery decay, > 0
    double I = 0.0;        ///< external stimulation current

    void validate() const;

    friend bool operator==(const DmlParams&, const DmlParams&) = default;
};

struct NoCoupling {
    friend bool operator==(const NoCoupling&, const NoCoupling&) = default;
};

/// theta (x_j - x_i) flow between the voltage variables.
struct LinearCoupling {
    double theta = 0.008;
    friend bool operator==(const LinearCoupling&, const LinearCoupling&) = default;
};

/// sigma (v_s - x_i) / (1 + exp(-lambda (x_j - q))), fast threshold modulation.
struct SigmoidCoupling {
    double sigma = 0.001;
    double v_s = 2.0;
    double lambda = 10.0;
    double q = -0.25;
    friend bool operator==(const SigmoidCoupling&, const SigmoidCoupling&) = default;
};

using Coupling = std::variant<NoCoupling, LinearCoupling, SigmoidCoupling>;

enum class Model { Single, DimerLinear, DimerSigmoid };

[[nodiscard]] Model model_of(const Coupling& c) noexcept;
[[nodiscard]] std::string_view to_string(Model m) noexcept;
/// Parses "single", "dimer-linear" or "dimer-sigmoid".
[[nodiscard]] Model parse_model(std::string_view name);
/// 2 for the single cell, 4 for a dimer.
[[nodiscard]] std::size_t state_dimension(const Coupling& c) noexcept;
/// Throws InvalidArgument for theta < 0, sigma < 0 or lambda <= 0.
void validate_coupling(const Coupling& c);
/// theta for linear coupling, sigma for sigmoid, 0 otherwise.
[[nodiscard]] double coupling_strength(const Coupling& c) noexcept;

using State2 = std::array<double, 2>;
using State4 = std::array<double, 4>;

/// 1 / (1 + exp(-lambda (x - q))), evaluated without overflow.
[[nodiscard]] double sigmoid(double x, double lambda, double q) noexcept;

/// d/dx of sigmoid(x, lambda, q).
[[nodiscard]] double sigmoid_slope(double x, double lambda, double q) noexcept;

/// (x^2 (1 - x) - y + I, A e^{alpha x} - gamma y)
[[nodiscard]] State2 rhs_single(double t, const State2& s, const DmlParams& p) noexcept;

[[nodiscard]] State4 rhs_coupled_linear(double t, const State4& s, const DmlParams& p, double theta) noexcept;

[[nodiscard]] State4 rhs_coupled_sigmoid(double t, const State4& s, const DmlParams& p,
                                         const SigmoidCoupling& c) noexcept;

/// Solver-facing adapter for the model selected by the coupling.
[[nodiscard]] Rhs make_rhs(const DmlParams& p, const Coupling& c);

/// Largest voltage seen on the trajectory vs v_s: the synapse is excitatory
/// only while v_s exceeds every visited x. Always true for non-sigmoid models.
[[nodiscard]] bool synapse_excitatory(const Trajectory& trajectory, const Coupling& c);

}  // namespace fdml
