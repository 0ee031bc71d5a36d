#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mcwave/types.hpp"

namespace mcw {

/// Unitary FFT of a fixed length. Powers of two use an iterative radix-2
/// kernel; every other length goes through Bluestein's chirp-z convolution.
///
/// Both directions scale by 1/sqrt(n), so forward() applies dft_matrix(n)
/// and inverse() applies its adjoint. A plan is immutable after construction
/// and may be shared between threads.
class FftPlan {
  public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<cplx> data) const;
    void inverse(std::span<cplx> data) const;

  private:
    void transform(std::span<cplx> data, bool inverse) const;
    void radix2(std::span<cplx> data, bool inverse) const;
    void bluestein(std::span<cplx> data, bool inverse) const;

    std::size_t n_;
    bool pow2_;
    std::vector<cplx> twiddles_;  // exp(-2*pi*i*k/m) for the radix-2 length m
    std::shared_ptr<const FftPlan> conv_plan_;
    std::vector<cplx> chirp_;        // exp(-pi*i*k^2/n)
    std::vector<cplx> chirp_fft_;    // forward FFT of the conjugate chirp filter
};

ComplexVector fft(const ComplexVector& v);
ComplexVector ifft(const ComplexVector& v);

}  // namespace mcw
