#include "gravicollapse/spectral.hpp"

#include <mutex>

#include <fftw3.h>

namespace gravicollapse {

namespace {
// FFTW plan creation is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft::Fft(int n) : n_(n) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(n, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(n, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void Fft::forward(Eigen::VectorXcd& data) const {
    for (int i = 0; i < n_; ++i) buf_[i] = data[i];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    for (int i = 0; i < n_; ++i) data[i] = buf_[i];
}

void Fft::inverse(Eigen::VectorXcd& data) const {
    for (int i = 0; i < n_; ++i) buf_[i] = data[i];
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) data[i] = buf_[i] * scale;
}

} // namespace gravicollapse
