#include "history.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <mutex>

namespace fdml::detail {

Kernels make_kernels(double beta, std::size_t length) {
    Kernels k;
    k.predictor.resize(length);
    k.corrector.resize(length);
    const double b1 = beta + 1.0;
    for (std::size_t i = 0; i < length; ++i) {
        const double x = static_cast<double>(i);
        k.predictor[i] = std::pow(x + 1.0, beta) - std::pow(x, beta);
        k.corrector[i] = std::pow(x + 2.0, b1) + std::pow(x, b1) - 2.0 * std::pow(x + 1.0, b1);
    }
    return k;
}

double corrector_start_weight(double beta, std::size_t n) {
    const double x = static_cast<double>(n);
    return std::pow(x, beta + 1.0) - (x - beta) * std::pow(x + 1.0, beta);
}

namespace {

// The FFTW planner is not reentrant; only fftw_execute may run concurrently.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct FftBlockConvolver::Plan {
    std::size_t size;
    double* real;
    fftw_complex* spectrum;
    fftw_plan forward;
    fftw_plan backward;

    explicit Plan(std::size_t n) : size(n) {
        const std::lock_guard lock(planner_mutex());
        real = fftw_alloc_real(n);
        spectrum = fftw_alloc_complex(n / 2 + 1);
        forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real, spectrum, FFTW_ESTIMATE);
        backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), spectrum, real, FFTW_ESTIMATE);
    }

    ~Plan() {
        const std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(real);
        fftw_free(spectrum);
    }

    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    std::vector<std::complex<double>> transform(std::span<const double> src) {
        std::fill(real, real + size, 0.0);
        std::copy(src.begin(), src.end(), real);
        fftw_execute(forward);
        std::vector<std::complex<double>> out(size / 2 + 1);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = {spectrum[i][0], spectrum[i][1]};
        }
        return out;
    }
};

struct FftBlockConvolver::Spectra {
    std::vector<std::complex<double>> predictor;
    std::vector<std::complex<double>> corrector;
};

FftBlockConvolver::FftBlockConvolver(const Kernels& kernels) : kernels_(kernels) {}

FftBlockConvolver::~FftBlockConvolver() = default;

FftBlockConvolver::Plan& FftBlockConvolver::plan_for(std::size_t fft_size) {
    auto& slot = plans_[fft_size];
    if (!slot) {
        slot = std::make_unique<Plan>(fft_size);
    }
    return *slot;
}

const FftBlockConvolver::Spectra& FftBlockConvolver::spectra_for(std::size_t fft_size, std::size_t kernel_length) {
    auto& slot = spectra_[{fft_size, kernel_length}];
    if (!slot) {
        auto& plan = plan_for(fft_size);
        slot = std::make_unique<Spectra>();
        slot->predictor = plan.transform(std::span(kernels_.predictor).first(kernel_length));
        slot->corrector = plan.transform(std::span(kernels_.corrector).first(kernel_length));
    }
    return *slot;
}

void FftBlockConvolver::accumulate(std::span<const double> pred_src, std::span<const double> corr_src,
                                   std::span<double> pred_out, std::span<double> corr_out) {
    const std::size_t src_len = pred_src.size();
    const std::size_t out_len = pred_out.size();
    const std::size_t kernel_length = src_len + out_len - 1;
    // A circular transform of length >= kernel_length leaves the needed lags
    // [src_len - 1, kernel_length - 1] free of wrap-around.
    const std::size_t fft_size = std::bit_ceil(kernel_length);

    const auto& spectra = spectra_for(fft_size, kernel_length);
    auto& plan = plan_for(fft_size);
    const double norm = 1.0 / static_cast<double>(fft_size);
    const std::size_t bins = fft_size / 2 + 1;

    auto apply = [&](const std::vector<std::complex<double>>& src_hat,
                     const std::vector<std::complex<double>>& kernel_hat, std::span<double> out) {
        for (std::size_t i = 0; i < bins; ++i) {
            const auto v = src_hat[i] * kernel_hat[i];
            plan.spectrum[i][0] = v.real();
            plan.spectrum[i][1] = v.imag();
        }
        fftw_execute(plan.backward);
        for (std::size_t u = 0; u < out_len; ++u) {
            out[u] += plan.real[u + src_len - 1] * norm;
        }
    };

    const auto pred_hat = plan.transform(pred_src);
    apply(pred_hat, spectra.predictor, pred_out);
    if (corr_src.data() == pred_src.data() && corr_src.size() == src_len) {
        apply(pred_hat, spectra.corrector, corr_out);
    } else {
        apply(plan.transform(corr_src), spectra.corrector, corr_out);
    }
}

}  // namespace fdml::detail
