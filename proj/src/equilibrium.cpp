#include "fdml/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fdml {

std::string_view to_string(Branch b) noexcept {
    switch (b) {
        case Branch::Unique: return "unique";
        case Branch::TwoFold: return "two-fold";
        case Branch::ThreeFold: return "three-fold";
    }
    return "unique";
}

double i_infinity(double x, const DmlParams& p) noexcept {
    return p.A / p.gamma * std::exp(p.alpha * x) - x * x * (1.0 - x);
}

double i_infinity_derivative(double x, const DmlParams& p, int m) {
    if (m < 1) {
        throw InvalidArgument("derivative order must be at least 1");
    }
    const double exp_part = std::pow(p.alpha, m) * p.A / p.gamma * std::exp(p.alpha * x);
    switch (m) {
        case 1: return exp_part - x * (2.0 - 3.0 * x);
        case 2: return exp_part - 2.0 * (1.0 - 3.0 * x);
        case 3: return exp_part + 6.0;
        default: return exp_part;
    }
}

namespace {

using ScalarFn = std::function<double(double)>;

void validate_scan(const RootScanOptions& scan) {
    if (!(scan.upper > scan.lower) || !(scan.step > 0.0)) {
        throw InvalidArgument("root scan needs upper > lower and step > 0");
    }
}

// Bisection to 1e-14 followed by at most five Newton steps that are kept only
// while they stay in the bracket and shrink the residual.
double refine_root(const ScalarFn& g, const ScalarFn& dg, double a, double b, double ga) {
    for (int i = 0; i < 200 && b - a > 1e-14; ++i) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if (gm == 0.0) {
            return m;
        }
        if ((gm < 0.0) == (ga < 0.0)) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    const double lo = a;
    const double hi = b;
    double x = 0.5 * (a + b);
    double gx = g(x);
    for (int i = 0; i < 5 && gx != 0.0; ++i) {
        const double slope = dg(x);
        if (slope == 0.0 || !std::isfinite(slope)) {
            break;
        }
        const double candidate = x - gx / slope;
        if (candidate < lo - 1e-14 || candidate > hi + 1e-14) {
            break;
        }
        const double gc = g(candidate);
        if (!(std::abs(gc) < std::abs(gx))) {
            break;
        }
        x = candidate;
        gx = gc;
    }
    return x;
}

// Sign-change scan of g on a uniform grid over [lower, upper].
std::vector<double> bracketed_roots(const ScalarFn& g, const ScalarFn& dg, double lower, double upper,
                                    double step) {
    std::vector<double> roots;
    const auto n = static_cast<std::size_t>(std::ceil((upper - lower) / step));
    double x_prev = lower;
    double g_prev = g(x_prev);
    if (g_prev == 0.0) {
        roots.push_back(x_prev);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = (i == n) ? upper : lower + static_cast<double>(i) * step;
        const double gx = g(x);
        if (gx == 0.0) {
            roots.push_back(x);
        } else if (g_prev != 0.0 && (gx < 0.0) != (g_prev < 0.0)) {
            roots.push_back(refine_root(g, dg, x_prev, x, g_prev));
        }
        x_prev = x;
        g_prev = gx;
    }
    return roots;
}

// Roots of g, including tangential (double) roots: the critical points of g
// are inserted into the scan grid and a critical point where |g| is within
// the fold tolerance counts as a root.
std::vector<double> all_roots(const ScalarFn& g, const ScalarFn& dg, const ScalarFn& d2g, double lower,
                              double upper, double step) {
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::ceil((upper - lower) / step));
    grid.reserve(n + 8);
    for (std::size_t i = 0; i < n; ++i) {
        grid.push_back(lower + static_cast<double>(i) * step);
    }
    grid.push_back(upper);
    const auto critical = bracketed_roots(dg, d2g, lower, upper, step);
    grid.insert(grid.end(), critical.begin(), critical.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> values(grid.size());
    std::vector<bool> is_root(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = g(grid[i]);
        const bool at_critical = std::find(critical.begin(), critical.end(), grid[i]) != critical.end();
        is_root[i] = values[i] == 0.0 || (at_critical && std::abs(values[i]) <= fold_tolerance);
    }

    std::vector<double> roots;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (is_root[i]) {
            roots.push_back(grid[i]);
            continue;
        }
        if (i + 1 < grid.size() && !is_root[i + 1] && (values[i] < 0.0) != (values[i + 1] < 0.0)) {
            roots.push_back(refine_root(g, dg, grid[i], grid[i + 1], values[i]));
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

Branch branch_from_count(std::size_t count) {
    switch (count) {
        case 1: return Branch::Unique;
        case 2: return Branch::TwoFold;
        case 3: return Branch::ThreeFold;
        default: {
            std::ostringstream os;
            os << "found " << count << " equilibria; expected 1 to 3";
            throw NumericalError(os.str());
        }
    }
}

EquilibriumSet solve_equilibria(const DmlParams& p, const ScalarFn& g, const ScalarFn& dg, const ScalarFn& d2g,
                                const RootScanOptions& scan) {
    validate_scan(scan);
    auto roots = all_roots(g, dg, d2g, scan.lower, scan.upper, scan.step);
    if (roots.empty()) {
        roots = all_roots(g, dg, d2g, 2.0 * scan.lower - scan.upper, 2.0 * scan.upper - scan.lower, scan.step);
    }
    if (roots.empty()) {
        throw RootWindowExhausted("no equilibrium found in the widened scan window");
    }
    EquilibriumSet set;
    for (double x : roots) {
        set.points.push_back({x, p.A / p.gamma * std::exp(p.alpha * x)});
    }
    set.branch = branch_from_count(set.points.size());
    return set;
}

}  // namespace

InfCurveExtrema find_extrema(const DmlParams& p, const RootScanOptions& scan) {
    p.validate();
    validate_scan(scan);
    const ScalarFn d1 = [&](double x) { return i_infinity_derivative(x, p, 1); };
    const ScalarFn d2 = [&](double x) { return i_infinity_derivative(x, p, 2); };
    const auto critical = bracketed_roots(d1, d2, scan.lower, scan.upper, scan.step);
    if (critical.size() != 2 || !(d2(critical[0]) < 0.0) || !(d2(critical[1]) > 0.0)) {
        std::ostringstream os;
        os << "I_inf has " << critical.size() << " critical points in [" << scan.lower << ", " << scan.upper
           << "]; expected one maximum followed by one minimum";
        throw NoExtrema(os.str());
    }
    InfCurveExtrema ex;
    ex.x_max = critical[0];
    ex.I_max = i_infinity(ex.x_max, p);
    ex.x_min = critical[1];
    ex.I_min = i_infinity(ex.x_min, p);
    return ex;
}

Branch classify_branch(double I, const InfCurveExtrema& ex) noexcept {
    if (std::abs(I - ex.I_min) <= fold_tolerance || std::abs(I - ex.I_max) <= fold_tolerance) {
        return Branch::TwoFold;
    }
    if (I < ex.I_min || I > ex.I_max) {
        return Branch::Unique;
    }
    return Branch::ThreeFold;
}

double equilibrium_residual(double x, const DmlParams& p, const Coupling& c) {
    double g = p.I - i_infinity(x, p);
    if (const auto* sig = std::get_if<SigmoidCoupling>(&c)) {
        g += sig->sigma * (sig->v_s - x) * sigmoid(x, sig->lambda, sig->q);
    }
    return g;
}

EquilibriumSet find_equilibria_2d(const DmlParams& p, const RootScanOptions& scan) {
    p.validate();
    const ScalarFn g = [&](double x) { return p.I - i_infinity(x, p); };
    const ScalarFn dg = [&](double x) { return -i_infinity_derivative(x, p, 1); };
    const ScalarFn d2g = [&](double x) { return -i_infinity_derivative(x, p, 2); };
    return solve_equilibria(p, g, dg, d2g, scan);
}

EquilibriumSet find_symmetric_equilibria(const DmlParams& p, const Coupling& c, const RootScanOptions& scan) {
    validate_coupling(c);
    const auto* sig = std::get_if<SigmoidCoupling>(&c);
    if (sig == nullptr) {
        return find_equilibria_2d(p, scan);
    }
    p.validate();
    const SigmoidCoupling s = *sig;
    const ScalarFn g = [&](double x) { return equilibrium_residual(x, p, c); };
    const ScalarFn dg = [&](double x) {
        const double z = sigmoid(x, s.lambda, s.q);
        const double dz = sigmoid_slope(x, s.lambda, s.q);
        return -i_infinity_derivative(x, p, 1) - s.sigma * z + s.sigma * (s.v_s - x) * dz;
    };
    const ScalarFn d2g = [&](double x) {
        const double z = sigmoid(x, s.lambda, s.q);
        const double dz = sigmoid_slope(x, s.lambda, s.q);
        const double d2z = s.lambda * dz * (1.0 - 2.0 * z);
        return -i_infinity_derivative(x, p, 2) - 2.0 * s.sigma * dz + s.sigma * (s.v_s - x) * d2z;
    };
    return solve_equilibria(p, g, dg, d2g, scan);
}

}  // namespace fdml
