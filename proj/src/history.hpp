#pragma once

// Convolution kernels of the product-integration rules and the FFT block
// convolver used to accelerate the history sums. Internal to the solver.

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace fdml::detail {

/// predictor[k] = (k + 1)^beta - k^beta
/// corrector[k] = (k + 2)^(beta + 1) + k^(beta + 1) - 2 (k + 1)^(beta + 1)
struct Kernels {
    std::vector<double> predictor;
    std::vector<double> corrector;
};

[[nodiscard]] Kernels make_kernels(double beta, std::size_t length);

/// a_{0,n+1} = n^(beta + 1) - (n - beta) (n + 1)^beta
[[nodiscard]] double corrector_start_weight(double beta, std::size_t n);

/// Adds the contribution of a finished block of f samples to the history sums
/// of the following block:
///
///   out[u] += sum_s src[s] * kernel[u + src.size() - 1 - s],   u = 0..out.size()-1
///
/// for both kernels at once. Kernel spectra and FFT plans are cached per
/// block length. Instances are not shareable between threads; every solve
/// owns its own.
class FftBlockConvolver {
public:
    explicit FftBlockConvolver(const Kernels& kernels);
    ~FftBlockConvolver();
    FftBlockConvolver(const FftBlockConvolver&) = delete;
    FftBlockConvolver& operator=(const FftBlockConvolver&) = delete;

    /// pred_src feeds the predictor kernel, corr_src the corrector kernel.
    /// Passing the same span for both reuses one forward transform.
    void accumulate(std::span<const double> pred_src, std::span<const double> corr_src,
                    std::span<double> pred_out, std::span<double> corr_out);

private:
    struct Plan;
    struct Spectra;

    Plan& plan_for(std::size_t fft_size);
    const Spectra& spectra_for(std::size_t fft_size, std::size_t kernel_length);

    const Kernels& kernels_;
    std::map<std::size_t, std::unique_ptr<Plan>> plans_;
    std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<Spectra>> spectra_;
};

}  // namespace fdml::detail
