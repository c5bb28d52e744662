#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gravicollapse {

// Thin wrapper around FFTW double-precision 1-D transforms. Plans are
// created with FFTW_ESTIMATE so results are reproducible run to run, and
// each instance owns its buffers, so distinct instances may be used from
// different threads. inverse() includes the 1/n scaling.
class Fft {
  public:
    explicit Fft(int n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    int size() const { return n_; }
    void forward(Eigen::VectorXcd& data) const;
    void inverse(Eigen::VectorXcd& data) const;

  private:
    int n_;
    void* plan_fwd_;
    void* plan_bwd_;
    std::complex<double>* buf_;
};

} // namespace gravicollapse
