#pragma once

#include <complex>
#include <cstddef>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <span>

#include <fftw3.h>

namespace fourthlab::detail {

// Unnormalized 1-D complex DFT of power-of-two length backed by FFTW.
//   forward: X[k] = sum_m x[m] e^{-2 pi i m k / n}
//   inverse: x[m] = sum_k X[k] e^{+2 pi i m k / n}
// Plans are FFTW_ESTIMATE so that repeated runs execute identical kernels.
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        std::lock_guard lock(planner_mutex());
        forward_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_, FFTW_FORWARD,
                                    FFTW_ESTIMATE);
        inverse_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_, FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
    }

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    ~FftPlan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(inverse_);
        fftw_free(buffer_);
    }

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<std::complex<double>> data) { run(forward_, data); }
    void inverse(std::span<std::complex<double>> data) { run(inverse_, data); }

private:
    static std::mutex& planner_mutex() {
        static std::mutex m;
        return m;
    }

    void run(fftw_plan plan, std::span<std::complex<double>> data) {
        std::memcpy(buffer_, data.data(), sizeof(fftw_complex) * n_);
        fftw_execute(plan);
        std::memcpy(data.data(), buffer_, sizeof(fftw_complex) * n_);
    }

    std::size_t n_;
    fftw_complex* buffer_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

// One plan per length per thread; the aligned buffer makes plans stateful.
inline FftPlan& fft_plan(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlan>(n);
    return *slot;
}

inline void fft_forward(std::span<std::complex<double>> data) { fft_plan(data.size()).forward(data); }
inline void fft_inverse(std::span<std::complex<double>> data) { fft_plan(data.size()).inverse(data); }

}  // namespace fourthlab::detail
