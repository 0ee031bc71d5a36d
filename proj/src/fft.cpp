#include "mcwave/fft.hpp"

#include <bit>
#include <numbers>

#include "mcwave/linalg.hpp"

namespace mcw {

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(std::has_single_bit(n)) {
    if (n == 0) throw DimensionError("FftPlan: length must be >= 1");
    if (pow2_) {
        twiddles_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) twiddles_[k] = unit_root(static_cast<std::int64_t>(k), n);
        return;
    }
    const std::size_t m = std::bit_ceil(2 * n - 1);
    conv_plan_ = std::make_shared<const FftPlan>(m);
    chirp_.resize(n);
    const auto two_n = static_cast<std::uint64_t>(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto k2 = (static_cast<std::uint64_t>(k) * k) % two_n;
        const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    chirp_fft_.assign(m, cplx{});
    chirp_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) chirp_fft_[k] = chirp_fft_[m - k] = std::conj(chirp_[k]);
    conv_plan_->forward(chirp_fft_);
}

void FftPlan::forward(std::span<cplx> data) const { transform(data, false); }
void FftPlan::inverse(std::span<cplx> data) const { transform(data, true); }

void FftPlan::transform(std::span<cplx> data, bool inverse) const {
    if (data.size() != n_) throw DimensionError("FftPlan: buffer length does not match plan");
    if (n_ == 1) return;
    if (pow2_)
        radix2(data, inverse);
    else
        bluestein(data, inverse);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_));
    for (auto& z : data) z *= scale;
}

// Unnormalized in-place decimation-in-time transform.
void FftPlan::radix2(std::span<cplx> data, bool inverse) const {
    const std::size_t n = n_;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddles_[k * stride];
                if (inverse) w = std::conj(w);
                const cplx u = data[start + k];
                const cplx v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

// Unnormalized chirp-z transform for arbitrary n.
void FftPlan::bluestein(std::span<cplx> data, bool inverse) const {
    const std::size_t m = conv_plan_->size();
    std::vector<cplx> work(m, cplx{});
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx x = inverse ? std::conj(data[k]) : data[k];
        work[k] = x * chirp_[k];
    }
    conv_plan_->forward(work);
    for (std::size_t k = 0; k < m; ++k) work[k] *= chirp_fft_[k];
    conv_plan_->inverse(work);
    // The unitary length-m passes leave the circular convolution scaled by 1/sqrt(m).
    const double conv_scale = std::sqrt(static_cast<double>(m));
    for (std::size_t k = 0; k < n_; ++k) {
        const cplx y = work[k] * chirp_[k] * conv_scale;
        data[k] = inverse ? std::conj(y) : y;
    }
}

ComplexVector fft(const ComplexVector& v) {
    ComplexVector out = v;
    FftPlan(v.size()).forward(out.span());
    return out;
}

ComplexVector ifft(const ComplexVector& v) {
    ComplexVector out = v;
    FftPlan(v.size()).inverse(out.span());
    return out;
}

}  // namespace mcw
