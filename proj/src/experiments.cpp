#include "fdml/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace fdml {

OscillationMetrics oscillation_metrics(std::span<const double> tail, double threshold) {
    if (tail.size() < 3) {
        throw InsufficientSamples("oscillation metrics need at least 3 samples");
    }
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    OscillationMetrics m;
    m.amplitude = *hi - *lo;
    m.is_oscillating = m.amplitude > threshold;
    int last_sign = 0;
    for (std::size_t k = 1; k < tail.size(); ++k) {
        const double diff = tail[k] - tail[k - 1];
        const int sign = (diff > 0.0) - (diff < 0.0);
        if (sign == 0) {
            continue;
        }
        if (last_sign != 0 && sign != last_sign) {
            ++m.extrema_count;
        }
        last_sign = sign;
    }
    return m;
}

std::vector<std::size_t> voltage_components(const Coupling& c) {
    if (std::holds_alternative<NoCoupling>(c)) {
        return {0};
    }
    return {0, 2};
}

std::vector<double> default_initial_state(const Coupling& c) {
    if (std::holds_alternative<NoCoupling>(c)) {
        return {0.1, 0.1};
    }
    return {0.1, 0.1, -0.2, 0.1};
}

namespace {

std::vector<double> tail_of(const Trajectory& traj, std::size_t component, std::size_t tail) {
    std::vector<double> out(tail);
    const std::size_t first = traj.size() - tail;
    for (std::size_t k = 0; k < tail; ++k) {
        out[k] = traj.at(first + k, component);
    }
    return out;
}

void check_initial_state(const Coupling& c, std::span<const double> y0) {
    if (y0.size() != state_dimension(c)) {
        std::ostringstream os;
        os << to_string(model_of(c)) << " model expects " << state_dimension(c) << " initial values, got "
           << y0.size();
        throw DimensionMismatch(os.str());
    }
}

}  // namespace

SimulationSummary run_experiment(const DmlParams& p, const Coupling& c, FractionalOrder beta,
                                 std::span<const double> y0, const SolverConfig& config,
                                 const ExperimentOptions& options) {
    check_initial_state(c, y0);
    if (options.tail == 0) {
        throw InvalidArgument("tail must be positive");
    }
    const std::size_t samples = config.steps() + 1;
    if (options.discard + options.tail > samples) {
        std::ostringstream os;
        os << "discard (" << options.discard << ") + tail (" << options.tail << ") exceeds the " << samples
           << " samples of the run";
        throw InsufficientSamples(os.str());
    }

    SimulationSummary summary;
    summary.trajectory = solve_fde(make_rhs(p, c), beta, config, y0);
    summary.discard = options.discard;
    for (const auto component : voltage_components(c)) {
        const auto tail = tail_of(summary.trajectory, component, options.tail);
        const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
        summary.tail_amplitude_per_neuron.push_back(*hi - *lo);
    }
    summary.tail_amplitude_x =
        *std::max_element(summary.tail_amplitude_per_neuron.begin(), summary.tail_amplitude_per_neuron.end());
    summary.converged = summary.tail_amplitude_x < options.convergence_threshold;
    const auto last = summary.trajectory.back();
    summary.final_state.assign(last.begin(), last.end());
    summary.synapse_excitatory = synapse_excitatory(summary.trajectory, c);
    return summary;
}

std::vector<double> sweep_orders(const SweepOptions& options) {
    if (!(options.beta_low > 0.0) || !(options.beta_high <= 1.0) || !(options.beta_low <= options.beta_high)) {
        throw InvalidArgument("beta range must satisfy 0 < low <= high <= 1");
    }
    if (!(options.beta_step > 0.0)) {
        throw InvalidArgument("beta step must be positive");
    }
    const double span = (options.beta_high - options.beta_low) / options.beta_step;
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> betas(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double offset = static_cast<double>(k) * options.beta_step;
        betas[k] = options.descending ? options.beta_high - offset : options.beta_low + offset;
    }
    return betas;
}

BifurcationScan bifurcation_sweep(const DmlParams& p, const Coupling& c, std::span<const double> y0,
                                  const SolverConfig& config, const SweepOptions& options) {
    check_initial_state(c, y0);
    if (options.tail == 0 || options.tail > config.steps() + 1) {
        throw InsufficientSamples("sweep tail must be between 1 and the number of samples per run");
    }
    const auto rhs = make_rhs(p, c);
    const auto voltages = voltage_components(c);

    BifurcationScan scan;
    scan.warm_start = options.warm_start;
    scan.beta_values = sweep_orders(options);
    std::vector<double> start(y0.begin(), y0.end());
    for (const double b : scan.beta_values) {
        SweepColumn column;
        column.beta = b;
        column.initial_state = options.warm_start ? start : std::vector<double>(y0.begin(), y0.end());
        try {
            const auto traj = solve_fde(rhs, FractionalOrder(b), config, column.initial_state);
            for (const auto component : voltages) {
                column.tails.push_back(tail_of(traj, component, options.tail));
            }
            const auto last = traj.back();
            column.final_state.assign(last.begin(), last.end());
            start = column.final_state;
        } catch (const NumericalError& e) {
            column.error = e.what();
        }
        scan.columns.push_back(std::move(column));
    }
    return scan;
}

std::optional<double> oscillation_onset(const BifurcationScan& scan, double threshold) {
    std::vector<const SweepColumn*> ordered;
    for (const auto& column : scan.columns) {
        ordered.push_back(&column);
    }
    std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) { return a->beta > b->beta; });

    std::optional<double> onset;
    for (const auto* column : ordered) {
        if (column->error) {
            break;
        }
        const bool oscillating = std::any_of(column->tails.begin(), column->tails.end(), [&](const auto& tail) {
            return oscillation_metrics(tail, threshold).is_oscillating;
        });
        if (!oscillating) {
            break;
        }
        onset = column->beta;
    }
    return onset;
}

std::vector<BifurcationScan> sweep_grid(const std::vector<SweepCell>& cells, std::span<const double> y0,
                                        const SolverConfig& config, const SweepOptions& options,
                                        unsigned max_threads) {
    std::vector<BifurcationScan> results(cells.size());
    std::vector<std::exception_ptr> failures(cells.size());
    std::atomic<std::size_t> next{0};
    const std::vector<double> start(y0.begin(), y0.end());

    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                results[i] = bifurcation_sweep(cells[i].params, cells[i].coupling, start, config, options);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    unsigned threads = max_threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : max_threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(cells.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return results;
}

HopfCurve hopf_curve(const DmlParams& p, const Coupling& c, double I_low, double I_high, std::size_t n_points) {
    if (n_points == 0) {
        throw InvalidArgument("hopf curve needs at least one point");
    }
    if (!(I_high >= I_low)) {
        throw InvalidArgument("current range must satisfy low <= high");
    }
    HopfCurve curve;
    curve.coupling_label = std::string(to_string(model_of(c)));
    curve.coupling_value = coupling_strength(c);

    for (std::size_t k = 0; k < n_points; ++k) {
        const double I = n_points == 1
                             ? I_low
                             : I_low + (I_high - I_low) * static_cast<double>(k) / static_cast<double>(n_points - 1);
        DmlParams local = p;
        local.I = I;
        std::ostringstream why;
        why << "I = " << I << ": ";
        try {
            const auto set = find_symmetric_equilibria(local, c);
            if (set.branch != Branch::Unique) {
                why << to_string(set.branch) << " equilibrium branch";
                curve.omitted.push_back(why.str());
                continue;
            }
            const auto threshold = beta_star(set.points.front().x_star, local, c);
            if (!threshold.is_threshold()) {
                why << threshold.describe();
                curve.omitted.push_back(why.str());
                continue;
            }
            curve.points.push_back({I, threshold.value});
        } catch (const NumericalError& e) {
            why << e.what();
            curve.omitted.push_back(why.str());
        }
    }
    return curve;
}

}  // namespace fdml
