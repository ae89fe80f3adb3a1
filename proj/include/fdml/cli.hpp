#pragma once

// Command-line front end. Commands: simulate, equilibria, stability,
// beta-star, sweep, hopf-curve, validate.
//
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.

#include "fdml/models.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdml::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_numerical = 1;
inline constexpr int exit_config = 2;

/// Everything one invocation needs. Serialises to a flat JSON object whose
/// keys mirror the long flag names (dashes become underscores).
struct RunConfig {
    std::string command;
    Model model = Model::Single;
    DmlParams params{.I = 0.019};
    LinearCoupling linear;
    SigmoidCoupling sigmoid;
    double beta = 0.9;
    double t_start = 0.0;
    double t_end = 6000.0;
    double h = 0.01;
    int corrector_iterations = 1;
    bool fft = false;
    std::optional<std::vector<double>> y0;
    std::size_t discard = 100000;
    std::size_t tail = 500;
    double beta_from = 1.0;
    double beta_to = 0.9;
    double beta_step = 0.002;
    double I_from = 0.016;
    double I_to = 0.03;
    std::size_t I_points = 100;
    std::string out;
    bool svg = false;

    /// Coupling matching the model.
    [[nodiscard]] Coupling coupling() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

[[nodiscard]] nlohmann::json to_json(const RunConfig& config);

/// Unknown keys and type errors throw InvalidArgument.
[[nodiscard]] RunConfig from_json(const nlohmann::json& j);

[[nodiscard]] RunConfig load_config(const std::string& path);

/// Parses and runs one invocation. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdml::cli
