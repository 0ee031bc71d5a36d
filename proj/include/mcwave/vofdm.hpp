#pragma once

// Vector OFDM. A length-N symbol vector d is read column-major into an M x L
// matrix D (columns are vector blocks), each row of D goes through a unitary
// L-point IFFT, and the result is column-stacked:
//
//     x = vec(D * F_L^H) = (F_L^H kron I_M) d
//
// Row m of D therefore lands on time samples n = m (mod M).

#include "mcwave/types.hpp"

namespace mcw {

struct VofdmConfig {
    std::size_t M = 1;  ///< vector-block length
    std::size_t L = 1;  ///< number of vector blocks per frame

    /// Throws ParameterError unless M >= 1 and L >= 1.
    void validate() const;
    std::size_t N() const noexcept { return M * L; }
};

struct VofdmFrame {
    VofdmConfig config;
    ComplexVector data;  ///< length config.N()

    void validate() const;
};

/// Dense V = F_L^H kron I_M.
ComplexMatrix vofdm_modulation_matrix(const VofdmConfig& cfg);

ComplexVector vofdm_modulate(const VofdmFrame& frame);

/// V^H x via de-interleave, row-wise FFT and flatten.
ComplexVector vofdm_demodulate(const ComplexVector& x, const VofdmConfig& cfg);

}  // namespace mcw
