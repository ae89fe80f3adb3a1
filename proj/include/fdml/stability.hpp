#pragma once

// Local stability of (symmetric) equilibria under the Caputo derivative.
//
// An equilibrium is asymptotically stable iff every Jacobian eigenvalue
// satisfies |arg lambda| > beta pi / 2. For a 2x2 block with trace tau and
// determinant delta this is equivalent to
//     delta > 0  and  tau < 2 sqrt(delta) cos(beta pi / 2).
// The dimer Jacobians are block circulant [[J, C], [C, J]], so their spectrum
// is the union of the spectra of J + C and J - C: every check is done on the
// two 2x2 branches "plus" and "minus".

#include "fdml/fde.hpp"
#include "fdml/models.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdml {

/// Determinants within this distance of zero are treated as a fold.
inline constexpr double degeneracy_tolerance = 1e-12;

/// Trace/determinant of each 2x2 branch. The minus branch exists for dimers only.
struct StabilityIndicators {
    double tau_plus = 0.0;
    double delta_plus = 0.0;
    std::optional<double> tau_minus;
    std::optional<double> delta_minus;

    /// (tau, delta) per branch, plus branch first.
    [[nodiscard]] std::vector<std::pair<double, double>> branches() const;
};

enum class Classification { AsymptoticallyStable, Unstable, Saddle, SaddleNodeDegenerate };

[[nodiscard]] std::string_view to_string(Classification c) noexcept;

/// Critical order at which the equilibrium loses stability.
struct BetaStar {
    enum class Kind { Threshold, StableForAllOrders, UnstableForAllOrders };
    Kind kind = Kind::Threshold;
    double value = 0.0;  ///< meaningful for Threshold only, in (0, 1]

    [[nodiscard]] bool is_threshold() const noexcept { return kind == Kind::Threshold; }
    [[nodiscard]] std::string describe() const;
};

struct StabilityReport {
    StabilityIndicators indicators;
    Classification classification = Classification::Unstable;
    std::optional<BetaStar> beta_star;  ///< absent when a determinant is not positive
};

/// Jacobian at the (symmetric) equilibrium with voltage x_star: 2x2 for the
/// single cell, 4x4 block matrix for the dimers.
[[nodiscard]] Eigen::MatrixXd jacobian(double x_star, const DmlParams& p, const Coupling& c);

[[nodiscard]] StabilityIndicators indicators(double x_star, const DmlParams& p, const Coupling& c);

[[nodiscard]] Classification classify(const StabilityIndicators& ind, FractionalOrder beta);

/// beta* = min over branches of (2/pi) acos(min(1, tau / (2 sqrt(delta)))).
/// Throws DegenerateDeterminant when any branch has delta <= 1e-12.
[[nodiscard]] BetaStar beta_star(const StabilityIndicators& ind);
[[nodiscard]] BetaStar beta_star(double x_star, const DmlParams& p, const Coupling& c);

[[nodiscard]] StabilityReport analyze(double x_star, const DmlParams& p, const Coupling& c, FractionalOrder beta);

struct SaddleNodeResult {
    bool occurs = false;
    std::optional<double> x_star;  ///< equilibrium where the fold sits
    std::string diagnostic;
};

/// Whether the system with current I sits on a saddle-node fold. The single
/// cell and the sigmoid dimer fold when some determinant branch vanishes at
/// an equilibrium; the linear dimer needs both branches to vanish, which
/// requires theta = 0.
[[nodiscard]] SaddleNodeResult saddle_node_condition(const DmlParams& p, const Coupling& c, double I);

}  // namespace fdml
