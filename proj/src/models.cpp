#include "fdml/models.hpp"

#include <cmath>
#include <string>

namespace fdml {

void DmlParams::validate() const {
    if (!(A > 0.0) || !(alpha > 0.0) || !(gamma > 0.0)) {
        throw InvalidArgument("A, alpha and gamma must be positive");
    }
    if (!std::isfinite(A) || !std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(I)) {
        throw InvalidArgument("parameters must be finite");
    }
}

Model model_of(const Coupling& c) noexcept {
    switch (c.index()) {
        case 1: return Model::DimerLinear;
        case 2: return Model::DimerSigmoid;
        default: return Model::Single;
    }
}

std::string_view to_string(Model m) noexcept {
    switch (m) {
        case Model::Single: return "single";
        case Model::DimerLinear: return "dimer-linear";
        case Model::DimerSigmoid: return "dimer-sigmoid";
    }
    return "single";
}

Model parse_model(std::string_view name) {
    if (name == "single") return Model::Single;
    if (name == "dimer-linear") return Model::DimerLinear;
    if (name == "dimer-sigmoid") return Model::DimerSigmoid;
    throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

std::size_t state_dimension(const Coupling& c) noexcept {
    return std::holds_alternative<NoCoupling>(c) ? 2 : 4;
}

void validate_coupling(const Coupling& c) {
    if (const auto* lin = std::get_if<LinearCoupling>(&c)) {
        if (!(lin->theta >= 0.0) || !std::isfinite(lin->theta)) {
            throw InvalidArgument("theta must be non-negative");
        }
    } else if (const auto* sig = std::get_if<SigmoidCoupling>(&c)) {
        if (!(sig->sigma >= 0.0) || !std::isfinite(sig->sigma)) {
            throw InvalidArgument("sigma must be non-negative");
        }
        if (!(sig->lambda > 0.0) || !std::isfinite(sig->lambda)) {
            throw InvalidArgument("lambda must be positive");
        }
        if (!std::isfinite(sig->v_s) || !std::isfinite(sig->q)) {
            throw InvalidArgument("v_s and q must be finite");
        }
    }
}

double coupling_strength(const Coupling& c) noexcept {
    if (const auto* lin = std::get_if<LinearCoupling>(&c)) return lin->theta;
    if (const auto* sig = std::get_if<SigmoidCoupling>(&c)) return sig->sigma;
    return 0.0;
}

double sigmoid(double x, double lambda, double q) noexcept {
    const double u = lambda * (x - q);
    if (u >= 0.0) {
        return 1.0 / (1.0 + std::exp(-u));
    }
    const double e = std::exp(u);
    return e / (1.0 + e);
}

double sigmoid_slope(double x, double lambda, double q) noexcept {
    const double s = sigmoid(x, lambda, q);
    return lambda * s * (1.0 - s);
}

namespace {

inline double voltage_field(double x, double y, double I) noexcept { return x * x * (1.0 - x) - y + I; }

inline double recovery_field(double x, double y, const DmlParams& p) noexcept {
    return p.A * std::exp(p.alpha * x) - p.gamma * y;
}

}  // namespace

State2 rhs_single(double /*t*/, const State2& s, const DmlParams& p) noexcept {
    return {voltage_field(s[0], s[1], p.I), recovery_field(s[0], s[1], p)};
}

State4 rhs_coupled_linear(double /*t*/, const State4& s, const DmlParams& p, double theta) noexcept {
    const double x1 = s[0], y1 = s[1], x2 = s[2], y2 = s[3];
    return {voltage_field(x1, y1, p.I) + theta * (x2 - x1), recovery_field(x1, y1, p),
            voltage_field(x2, y2, p.I) + theta * (x1 - x2), recovery_field(x2, y2, p)};
}

State4 rhs_coupled_sigmoid(double /*t*/, const State4& s, const DmlParams& p, const SigmoidCoupling& c) noexcept {
    const double x1 = s[0], y1 = s[1], x2 = s[2], y2 = s[3];
    return {voltage_field(x1, y1, p.I) + c.sigma * (c.v_s - x1) * sigmoid(x2, c.lambda, c.q),
            recovery_field(x1, y1, p),
            voltage_field(x2, y2, p.I) + c.sigma * (c.v_s - x2) * sigmoid(x1, c.lambda, c.q),
            recovery_field(x2, y2, p)};
}

Rhs make_rhs(const DmlParams& p, const Coupling& c) {
    p.validate();
    validate_coupling(c);
    return std::visit(
        [p](const auto& coupling) -> Rhs {
            using T = std::decay_t<decltype(coupling)>;
            if constexpr (std::is_same_v<T, NoCoupling>) {
                return [p](double t, std::span<const double> y) {
                    if (y.size() != 2) throw DimensionMismatch("single-cell model expects 2 state variables");
                    const auto f = rhs_single(t, {y[0], y[1]}, p);
                    return std::vector<double>(f.begin(), f.end());
                };
            } else {
                return [p, coupling](double t, std::span<const double> y) {
                    if (y.size() != 4) throw DimensionMismatch("dimer model expects 4 state variables");
                    const State4 s{y[0], y[1], y[2], y[3]};
                    State4 f;
                    if constexpr (std::is_same_v<T, LinearCoupling>) {
                        f = rhs_coupled_linear(t, s, p, coupling.theta);
                    } else {
                        f = rhs_coupled_sigmoid(t, s, p, coupling);
                    }
                    return std::vector<double>(f.begin(), f.end());
                };
            }
        },
        c);
}

bool synapse_excitatory(const Trajectory& trajectory, const Coupling& c) {
    const auto* sig = std::get_if<SigmoidCoupling>(&c);
    if (sig == nullptr) {
        return true;
    }
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const auto s = trajectory.state(k);
        if (s[0] >= sig->v_s || s[2] >= sig->v_s) {
            return false;
        }
    }
    return true;
}

}  // namespace fdml
