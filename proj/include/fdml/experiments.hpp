#pragma once

// Numerical experiments: long runs with transient discard, continuation
// sweeps in the fractional order, and closed-form Hopf curves on the (I, beta) plane.

#include "fdml/equilibrium.hpp"
#include "fdml/fde.hpp"
#include "fdml/models.hpp"
#include "fdml/stability.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fdml {

/// Peak-to-peak below this counts as converged / not oscillating.
inline constexpr double default_convergence_threshold = 1e-4;

struct OscillationMetrics {
    double amplitude = 0.0;
    bool is_oscillating = false;
    std::size_t extrema_count = 0;
};

/// amplitude = max - min; extrema_count = sign changes of the nonzero first
/// differences. Throws InsufficientSamples for fewer than 3 samples.
[[nodiscard]] OscillationMetrics oscillation_metrics(std::span<const double> tail,
                                                     double threshold = default_convergence_threshold);

struct ExperimentOptions {
    std::size_t discard = 100000;  ///< leading samples dropped from phase-portrait outputs
    std::size_t tail = 500;        ///< trailing samples used for the metrics
    double convergence_threshold = default_convergence_threshold;
};

struct SimulationSummary {
    Trajectory trajectory;
    double tail_amplitude_x = 0.0;                ///< largest peak-to-peak over the voltage variables
    std::vector<double> tail_amplitude_per_neuron;
    bool converged = false;
    std::vector<double> final_state;
    bool synapse_excitatory = true;               ///< v_s above every visited voltage (sigmoid only)
    std::size_t discard = 0;
};

/// Indices of the voltage variables: {0} for the single cell, {0, 2} for dimers.
[[nodiscard]] std::vector<std::size_t> voltage_components(const Coupling& c);

/// Default initial state: (0.1, 0.1) for the single cell, (0.1, 0.1, -0.2, 0.1) for dimers.
[[nodiscard]] std::vector<double> default_initial_state(const Coupling& c);

/// Throws InsufficientSamples when discard + tail exceeds the sample count;
/// solver errors propagate.
[[nodiscard]] SimulationSummary run_experiment(const DmlParams& p, const Coupling& c, FractionalOrder beta,
                                               std::span<const double> y0, const SolverConfig& config,
                                               const ExperimentOptions& options = {});

struct SweepOptions {
    double beta_high = 1.0;
    double beta_low = 0.9;
    double beta_step = 0.002;
    std::size_t tail = 500;
    bool warm_start = true;
    bool descending = true;  ///< continuation direction; ascending explores hysteresis
};

struct SweepColumn {
    double beta = 0.0;
    std::vector<std::vector<double>> tails;  ///< per voltage variable, exactly `tail` samples
    std::vector<double> initial_state;
    std::vector<double> final_state;
    std::optional<std::string> error;        ///< set when the solve for this beta failed
};

struct BifurcationScan {
    std::vector<double> beta_values;
    std::vector<SweepColumn> columns;
    bool warm_start = true;
};

/// The grid of orders visited by a sweep, in visiting order.
[[nodiscard]] std::vector<double> sweep_orders(const SweepOptions& options);

/// Continuation in beta: every run starts from the final state of the
/// previous one (when warm_start). A failing run is flagged and the sweep
/// continues from the last good state.
[[nodiscard]] BifurcationScan bifurcation_sweep(const DmlParams& p, const Coupling& c, std::span<const double> y0,
                                                const SolverConfig& config, const SweepOptions& options);

/// Lowest order of the contiguous block of oscillating columns that starts
/// at the largest order, judged on every voltage tail. nullopt when the
/// largest-order column does not oscillate.
[[nodiscard]] std::optional<double> oscillation_onset(const BifurcationScan& scan,
                                                      double threshold = default_convergence_threshold);

/// One independent cell of a parameter grid.
struct SweepCell {
    DmlParams params;
    Coupling coupling;
};

/// Runs independent sweeps concurrently; result i belongs to cells[i].
[[nodiscard]] std::vector<BifurcationScan> sweep_grid(const std::vector<SweepCell>& cells,
                                                      std::span<const double> y0, const SolverConfig& config,
                                                      const SweepOptions& options, unsigned max_threads = 0);

struct HopfPoint {
    double I = 0.0;
    double beta_star = 0.0;
};

struct HopfCurve {
    std::vector<HopfPoint> points;        ///< sorted by I
    std::string coupling_label;
    double coupling_value = 0.0;
    std::vector<std::string> omitted;     ///< why sampled currents produced no point
};

/// Closed-form Hopf threshold along I in [I_low, I_high] (n_points samples).
/// Currents without a unique equilibrium carrying a threshold in (0, 1] are omitted.
[[nodiscard]] HopfCurve hopf_curve(const DmlParams& p, const Coupling& c, double I_low, double I_high,
                                   std::size_t n_points);

}  // namespace fdml
