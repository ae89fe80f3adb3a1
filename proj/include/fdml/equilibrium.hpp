#pragma once

// Equilibria of the dML systems and the I-infinity curve that organises them.
//
// Eliminating y through the recovery nullcline y = (A/gamma) e^{alpha x}
// leaves the scalar equation I = I_inf(x) with
//     I_inf(x) = (A/gamma) e^{alpha x} - x^2 (1 - x).
// Its local maximum (x_max, I_max) and minimum (x_min, I_min) bound the
// current range with three equilibria.

#include "fdml/models.hpp"

#include <string_view>
#include <vector>

namespace fdml {

/// |I - I_fold| below this counts as sitting exactly on a fold.
inline constexpr double fold_tolerance = 1e-12;

struct InfCurveExtrema {
    double x_max = 0.0;
    double I_max = 0.0;
    double x_min = 0.0;
    double I_min = 0.0;
};

enum class Branch { Unique, TwoFold, ThreeFold };

[[nodiscard]] std::string_view to_string(Branch b) noexcept;

struct EquilibriumPoint {
    double x_star = 0.0;
    double y_star = 0.0;
};

/// Points sorted by x_star; the branch matches the number of points.
struct EquilibriumSet {
    std::vector<EquilibriumPoint> points;
    Branch branch = Branch::Unique;
};

/// Search window and grid for the bracketing root scan.
struct RootScanOptions {
    double lower = -1.5;
    double upper = 1.5;
    double step = 1e-3;
};

[[nodiscard]] double i_infinity(double x, const DmlParams& p) noexcept;

/// m-th derivative of I_inf, m >= 1.
[[nodiscard]] double i_infinity_derivative(double x, const DmlParams& p, int m);

/// Throws NoExtrema unless dI_inf/dx has exactly one +/- and one -/+ sign change in the window.
[[nodiscard]] InfCurveExtrema find_extrema(const DmlParams& p, const RootScanOptions& scan = {});

/// Branch predicted by the position of I relative to the fold currents.
[[nodiscard]] Branch classify_branch(double I, const InfCurveExtrema& ex) noexcept;

/// Scalar equation whose roots are the (symmetric) equilibrium voltages:
///   x^2 (1 - x) - (A/gamma) e^{alpha x} + I [+ sigma (v_s - x) sigmoid(x)].
[[nodiscard]] double equilibrium_residual(double x, const DmlParams& p, const Coupling& c = NoCoupling{});

/// All equilibria of the single cell in the scan window (widened once if empty).
[[nodiscard]] EquilibriumSet find_equilibria_2d(const DmlParams& p, const RootScanOptions& scan = {});

/// Symmetric equilibria (x*, y*, x*, y*) of a dimer, reported as (x*, y*).
/// Linear coupling leaves the equation of the single cell unchanged.
[[nodiscard]] EquilibriumSet find_symmetric_equilibria(const DmlParams& p, const Coupling& c,
                                                       const RootScanOptions& scan = {});

}  // namespace fdml
