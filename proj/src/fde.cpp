#include "fdml/fde.hpp"

#include "history.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fdml {

FractionalOrder::FractionalOrder(double beta) : beta_(beta) {
    if (!(beta > 0.0 && beta <= 1.0)) {
        std::ostringstream os;
        os << "order must lie in (0, 1], got " << beta;
        throw InvalidArgument(os.str());
    }
}

void SolverConfig::validate() const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_end > t_start)) {
        throw InvalidArgument("t_end must be greater than t_start");
    }
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw InvalidArgument("step size h must be positive");
    }
    if ((t_end - t_start) / h < 1.0 - 1e-9) {
        throw InvalidArgument("time span must cover at least one step");
    }
    if (corrector_iterations < 1) {
        throw InvalidArgument("corrector_iterations must be at least 1");
    }
}

std::size_t SolverConfig::steps() const {
    validate();
    const double span = (t_end - t_start) / h;
    const double nearest = std::round(span);
    if (std::abs(span - nearest) <= 1e-9 * std::max(1.0, span)) {
        return static_cast<std::size_t>(nearest);
    }
    return static_cast<std::size_t>(std::ceil(span));
}

Trajectory::Trajectory(double t_start, double h, std::size_t dimension)
    : t_start_(t_start), h_(h), dimension_(dimension) {}

void Trajectory::reserve(std::size_t nodes) { values_.reserve(nodes * dimension_); }

void Trajectory::push_back(std::span<const double> state) {
    if (state.size() != dimension_) {
        throw DimensionMismatch("state dimension does not match trajectory");
    }
    values_.insert(values_.end(), state.begin(), state.end());
}

std::span<const double> Trajectory::state(std::size_t k) const {
    if (k >= size()) {
        throw std::out_of_range("trajectory node out of range");
    }
    return std::span(values_).subspan(k * dimension_, dimension_);
}

std::vector<double> Trajectory::component(std::size_t index) const {
    if (index >= dimension_) {
        throw std::out_of_range("trajectory component out of range");
    }
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = values_[k * dimension_ + index];
    }
    return out;
}

std::vector<double> Trajectory::times() const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = time(k);
    }
    return out;
}

ProductWeights pi_weights(FractionalOrder order, std::size_t n, double h) {
    const double beta = order.value();
    const double scale = std::pow(h, beta) / beta;
    ProductWeights w;
    w.predictor.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double k = static_cast<double>(n - j);
        w.predictor[j] = scale * (std::pow(k + 1.0, beta) - std::pow(k, beta));
    }
    w.corrector.resize(n + 2);
    w.corrector[0] = detail::corrector_start_weight(beta, n);
    const double b1 = beta + 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double k = static_cast<double>(n - j);
        w.corrector[j] = std::pow(k + 2.0, b1) + std::pow(k, b1) - 2.0 * std::pow(k + 1.0, b1);
    }
    w.corrector[n + 1] = 1.0;
    w.corrector_scale = std::pow(h, beta) / std::tgamma(beta + 2.0);
    return w;
}

namespace {

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// PECE stepper. f-history is stored per component so the history sums run
// over contiguous memory.
class PeceSolver {
public:
    PeceSolver(const Rhs& rhs, double beta, const SolverConfig& config, std::span<const double> y0)
        : rhs_(rhs),
          beta_(beta),
          config_(config),
          steps_(config.steps()),
          dim_(y0.size()),
          y0_(y0.begin(), y0.end()),
          kernels_(detail::make_kernels(beta, steps_ + 1)),
          pred_scale_(std::pow(config.h, beta) / std::tgamma(beta + 1.0)),
          corr_scale_(std::pow(config.h, beta) / std::tgamma(beta + 2.0)),
          history_(dim_, std::vector<double>(steps_ + 1)),
          trajectory_(config.t_start, config.h, dim_),
          y_(dim_),
          y_pred_(dim_) {
        trajectory_.reserve(steps_ + 1);
    }

    Trajectory run() {
        if (dim_ == 0) {
            throw DimensionMismatch("initial state is empty");
        }
        if (!all_finite(y0_)) {
            throw NonFiniteState("initial state is not finite", Trajectory(config_.t_start, config_.h, dim_));
        }
        trajectory_.push_back(y0_);
        store_f(0, evaluate(config_.t_start, y0_));
        if (config_.use_fft) {
            run_fft();
        } else {
            run_direct();
        }
        return std::move(trajectory_);
    }

private:
    std::vector<double> evaluate(double t, std::span<const double> y) const {
        auto f = rhs_(t, y);
        if (f.size() != dim_) {
            std::ostringstream os;
            os << "rhs returned dimension " << f.size() << ", expected " << dim_;
            throw DimensionMismatch(os.str());
        }
        return f;
    }

    void store_f(std::size_t m, const std::vector<double>& f) {
        for (std::size_t i = 0; i < dim_; ++i) {
            history_[i][m] = f[i];
        }
    }

    // pred_hist[i] = sum_{j=0}^{m-1} c[m-1-j] f_j,  corr_hist[i] = sum_{j=1}^{m-1} d[m-1-j] f_j
    void advance(std::size_t m, std::span<const double> pred_hist, std::span<const double> corr_hist) {
        const std::size_t n = m - 1;
        const double t = config_.t_start + static_cast<double>(m) * config_.h;
        const double a0 = detail::corrector_start_weight(beta_, n);

        for (std::size_t i = 0; i < dim_; ++i) {
            y_pred_[i] = y0_[i] + pred_scale_ * pred_hist[i];
        }
        auto f = evaluate(t, y_pred_);
        for (int pass = 0; pass < config_.corrector_iterations; ++pass) {
            if (pass > 0) {
                f = evaluate(t, y_);
            }
            for (std::size_t i = 0; i < dim_; ++i) {
                y_[i] = y0_[i] + corr_scale_ * (a0 * history_[i][0] + corr_hist[i] + f[i]);
            }
        }
        if (!all_finite(y_)) {
            std::ostringstream os;
            os << "non-finite state at t = " << t << " (step " << m << ")";
            throw NonFiniteState(os.str(), std::move(trajectory_));
        }
        trajectory_.push_back(y_);
        store_f(m, evaluate(t, y_));
    }

    void run_direct() {
        std::vector<double> pred(dim_);
        std::vector<double> corr(dim_);
        const double* c = kernels_.predictor.data();
        const double* d = kernels_.corrector.data();
        for (std::size_t m = 1; m <= steps_; ++m) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const double* f = history_[i].data();
                double sp = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    sp += c[m - 1 - j] * f[j];
                }
                double sc = 0.0;
                for (std::size_t j = 1; j < m; ++j) {
                    sc += d[m - 1 - j] * f[j];
                }
                pred[i] = sp;
                corr[i] = sc;
            }
            advance(m, pred, corr);
        }
    }

    // Divide and conquer over the node range: the left half is solved, its
    // influence on the right half is added by FFT convolution, then the right
    // half is solved. Small blocks are summed directly.
    void run_fft() {
        constexpr std::size_t base_block = 64;
        const std::size_t nodes = steps_ + 1;
        std::vector<std::vector<double>> pred_acc(dim_, std::vector<double>(nodes, 0.0));
        std::vector<std::vector<double>> corr_acc(dim_, std::vector<double>(nodes, 0.0));
        detail::FftBlockConvolver convolver(kernels_);
        std::vector<double> pred(dim_);
        std::vector<double> corr(dim_);
        std::vector<double> corr_src;

        std::function<void(std::size_t, std::size_t)> solve = [&](std::size_t lo, std::size_t hi) {
            if (hi - lo <= base_block) {
                const double* c = kernels_.predictor.data();
                const double* d = kernels_.corrector.data();
                for (std::size_t m = std::max<std::size_t>(lo, 1); m < hi; ++m) {
                    for (std::size_t i = 0; i < dim_; ++i) {
                        const double* f = history_[i].data();
                        double sp = pred_acc[i][m];
                        double sc = corr_acc[i][m];
                        for (std::size_t j = lo; j < m; ++j) {
                            sp += c[m - 1 - j] * f[j];
                            if (j > 0) {
                                sc += d[m - 1 - j] * f[j];
                            }
                        }
                        pred[i] = sp;
                        corr[i] = sc;
                    }
                    advance(m, pred, corr);
                }
                return;
            }
            const std::size_t mid = lo + (hi - lo) / 2;
            solve(lo, mid);
            for (std::size_t i = 0; i < dim_; ++i) {
                const auto src = std::span<const double>(history_[i]).subspan(lo, mid - lo);
                auto pred_out = std::span(pred_acc[i]).subspan(mid, hi - mid);
                auto corr_out = std::span(corr_acc[i]).subspan(mid, hi - mid);
                if (lo == 0) {
                    // f_0 enters the corrector through a_{0,n+1} only.
                    corr_src.assign(src.begin(), src.end());
                    corr_src[0] = 0.0;
                    convolver.accumulate(src, corr_src, pred_out, corr_out);
                } else {
                    convolver.accumulate(src, src, pred_out, corr_out);
                }
            }
            solve(mid, hi);
        };
        solve(0, nodes);
    }

    const Rhs& rhs_;
    double beta_;
    SolverConfig config_;
    std::size_t steps_;
    std::size_t dim_;
    std::vector<double> y0_;
    detail::Kernels kernels_;
    double pred_scale_;
    double corr_scale_;
    std::vector<std::vector<double>> history_;
    Trajectory trajectory_;
    std::vector<double> y_;
    std::vector<double> y_pred_;
};

}  // namespace

Trajectory solve_fde(const Rhs& rhs, FractionalOrder order, const SolverConfig& config,
                     std::span<const double> y0) {
    config.validate();
    if (!rhs) {
        throw InvalidArgument("rhs is empty");
    }
    PeceSolver solver(rhs, order.value(), config, y0);
    return solver.run();
}

Trajectory solve_fde(const Rhs& rhs, std::span<const double> orders, const SolverConfig& config,
                     std::span<const double> y0) {
    if (orders.size() != y0.size()) {
        throw DimensionMismatch("one order per state component is required");
    }
    if (orders.empty()) {
        throw DimensionMismatch("initial state is empty");
    }
    const bool commensurate =
        std::all_of(orders.begin(), orders.end(), [&](double b) { return b == orders.front(); });
    if (!commensurate) {
        throw UnsupportedOption("incommensurate orders are not supported");
    }
    return solve_fde(rhs, FractionalOrder(orders.front()), config, y0);
}

}  // namespace fdml
