#include "fdml/stability.hpp"

#include "fdml/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fdml {

std::vector<std::pair<double, double>> StabilityIndicators::branches() const {
    std::vector<std::pair<double, double>> out{{tau_plus, delta_plus}};
    if (tau_minus && delta_minus) {
        out.emplace_back(*tau_minus, *delta_minus);
    }
    return out;
}

std::string_view to_string(Classification c) noexcept {
    switch (c) {
        case Classification::AsymptoticallyStable: return "asymptotically-stable";
        case Classification::Unstable: return "unstable";
        case Classification::Saddle: return "saddle";
        case Classification::SaddleNodeDegenerate: return "saddle-node-degenerate";
    }
    return "unstable";
}

std::string BetaStar::describe() const {
    switch (kind) {
        case Kind::StableForAllOrders: return "stable-for-all-orders";
        case Kind::UnstableForAllOrders: return "unstable-for-all-orders";
        case Kind::Threshold: break;
    }
    std::ostringstream os;
    os.precision(12);
    os << value;
    return os.str();
}

namespace {

// Voltage entry of the single-cell Jacobian, x (2 - 3x).
double voltage_slope(double x) { return x * (2.0 - 3.0 * x); }

// Diagonal shift and off-diagonal coupling entry of the dimer Jacobian.
struct CouplingBlock {
    double diagonal = 0.0;
    double coupling = 0.0;
};

CouplingBlock coupling_block(double x, const Coupling& c) {
    if (const auto* lin = std::get_if<LinearCoupling>(&c)) {
        return {-lin->theta, lin->theta};
    }
    if (const auto* sig = std::get_if<SigmoidCoupling>(&c)) {
        return {-sig->sigma * sigmoid(x, sig->lambda, sig->q),
                sig->sigma * (sig->v_s - x) * sigmoid_slope(x, sig->lambda, sig->q)};
    }
    return {};
}

}  // namespace

Eigen::MatrixXd jacobian(double x_star, const DmlParams& p, const Coupling& c) {
    p.validate();
    validate_coupling(c);
    const double recovery = p.alpha * p.A * std::exp(p.alpha * x_star);
    const double slope = voltage_slope(x_star);
    if (std::holds_alternative<NoCoupling>(c)) {
        Eigen::MatrixXd j(2, 2);
        j << slope, -1.0, recovery, -p.gamma;
        return j;
    }
    const auto block = coupling_block(x_star, c);
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(4, 4);
    for (int n = 0; n < 2; ++n) {
        const int o = 2 * n;
        j(o, o) = slope + block.diagonal;
        j(o, o + 1) = -1.0;
        j(o + 1, o) = recovery;
        j(o + 1, o + 1) = -p.gamma;
    }
    j(0, 2) = block.coupling;
    j(2, 0) = block.coupling;
    return j;
}

StabilityIndicators indicators(double x_star, const DmlParams& p, const Coupling& c) {
    p.validate();
    validate_coupling(c);
    const double recovery = p.alpha * p.A * std::exp(p.alpha * x_star);
    const double slope = voltage_slope(x_star);
    StabilityIndicators ind;
    if (const auto* lin = std::get_if<LinearCoupling>(&c)) {
        ind.tau_plus = slope - p.gamma;
        ind.delta_plus = -p.gamma * slope + recovery;
        ind.tau_minus = slope - p.gamma - 2.0 * lin->theta;
        ind.delta_minus = -p.gamma * (slope - 2.0 * lin->theta) + recovery;
    } else if (std::holds_alternative<SigmoidCoupling>(c)) {
        const auto block = coupling_block(x_star, c);
        const double s_plus = slope + block.diagonal + block.coupling;
        const double s_minus = slope + block.diagonal - block.coupling;
        ind.tau_plus = s_plus - p.gamma;
        ind.delta_plus = -p.gamma * s_plus + recovery;
        ind.tau_minus = s_minus - p.gamma;
        ind.delta_minus = -p.gamma * s_minus + recovery;
    } else {
        ind.tau_plus = slope - p.gamma;
        ind.delta_plus = -p.gamma * slope + recovery;
    }
    return ind;
}

Classification classify(const StabilityIndicators& ind, FractionalOrder beta) {
    const auto branches = ind.branches();
    if (std::any_of(branches.begin(), branches.end(),
                    [](const auto& b) { return b.second < -degeneracy_tolerance; })) {
        return Classification::Saddle;
    }
    if (std::any_of(branches.begin(), branches.end(),
                    [](const auto& b) { return std::abs(b.second) <= degeneracy_tolerance; })) {
        return Classification::SaddleNodeDegenerate;
    }
    const double cosine = std::cos(beta.value() * std::numbers::pi / 2.0);
    const bool stable = std::all_of(branches.begin(), branches.end(), [cosine](const auto& b) {
        return b.first < 2.0 * std::sqrt(b.second) * cosine;
    });
    return stable ? Classification::AsymptoticallyStable : Classification::Unstable;
}

BetaStar beta_star(const StabilityIndicators& ind) {
    double critical = std::numeric_limits<double>::infinity();
    for (const auto& [tau, delta] : ind.branches()) {
        if (!(delta > degeneracy_tolerance)) {
            std::ostringstream os;
            os << "beta* undefined: determinant " << delta << " is not positive";
            throw DegenerateDeterminant(os.str());
        }
        const double ratio = std::clamp(tau / (2.0 * std::sqrt(delta)), -1.0, 1.0);
        critical = std::min(critical, std::acos(ratio) / (std::numbers::pi / 2.0));
    }
    if (critical <= 0.0) {
        return {BetaStar::Kind::UnstableForAllOrders, 0.0};
    }
    if (critical > 1.0) {
        return {BetaStar::Kind::StableForAllOrders, 0.0};
    }
    return {BetaStar::Kind::Threshold, critical};
}

BetaStar beta_star(double x_star, const DmlParams& p, const Coupling& c) {
    return beta_star(indicators(x_star, p, c));
}

StabilityReport analyze(double x_star, const DmlParams& p, const Coupling& c, FractionalOrder beta) {
    StabilityReport report;
    report.indicators = indicators(x_star, p, c);
    report.classification = classify(report.indicators, beta);
    try {
        report.beta_star = beta_star(report.indicators);
    } catch (const DegenerateDeterminant&) {
        report.beta_star.reset();
    }
    return report;
}

SaddleNodeResult saddle_node_condition(const DmlParams& p, const Coupling& c, double I) {
    constexpr double fold_delta = 1e-10;
    DmlParams shifted = p;
    shifted.I = I;
    const auto set = find_symmetric_equilibria(shifted, c);
    const bool linear = std::holds_alternative<LinearCoupling>(c);

    SaddleNodeResult result;
    std::ostringstream os;
    for (const auto& point : set.points) {
        const auto ind = indicators(point.x_star, shifted, c);
        const bool plus = std::abs(ind.delta_plus) < fold_delta;
        const bool minus = ind.delta_minus && std::abs(*ind.delta_minus) < fold_delta;
        const bool folds = linear ? (plus && minus) : (plus || minus);
        if (folds) {
            result.occurs = true;
            result.x_star = point.x_star;
            os << "saddle-node at x* = " << point.x_star << " on the "
               << (linear ? "plus and minus" : (plus ? "plus" : "minus")) << " branch";
            result.diagnostic = os.str();
            return result;
        }
        if (linear && plus) {
            os << "delta+ vanishes at x* = " << point.x_star << " but delta- = " << *ind.delta_minus
               << " (coupling theta > 0 blocks the fold); ";
        }
    }
    os << "no determinant branch vanishes at the " << set.points.size() << " equilibria";
    result.diagnostic = os.str();
    return result;
}

}  // namespace fdml
