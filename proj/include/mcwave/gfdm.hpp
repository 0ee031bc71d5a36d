#pragma once

// Generalized frequency division multiplexing.
//
// A K x M data block D (column m = subsymbol d_m) is modulated as
//
//     x = sum_m diag(C_{mK} g) R F_K^H d_m
//
// with F_K^H the unitary K-point IFFT, R the M-fold periodic tiling of a
// length-K vector to N = K*M samples, and C_l the forward circular shift.
// Equivalently x = A vec(D) with columns
//
//     a_{k,m}[n] = g[(n - mK) mod N] * exp(2*pi*i*k*n/K) / sqrt(K)
//
// at column index m*K + k. The prototype g is scaled to energy K so every
// column of A has unit energy.

#include <memory>
#include <optional>

#include "mcwave/linalg.hpp"
#include "mcwave/types.hpp"

namespace mcw {

enum class PulseKind {
    RaisedCosine,   ///< time-domain raised cosine, symbol spacing K, zero phase, periodized to N
    RectSubsymbol,  ///< constant over samples 0..K-1
    Dirichlet,      ///< raised cosine with rolloff 0 (periodic sinc)
    Custom,         ///< user samples, rescaled to energy K
};

struct PulseSpec {
    PulseKind kind = PulseKind::RaisedCosine;
    double rolloff = 0.5;                  ///< raised cosine only, in [0, 1]
    std::optional<ComplexVector> samples;  ///< custom only, length N
};

struct GfdmConfig {
    std::size_t K = 1;  ///< subcarriers
    std::size_t M = 1;  ///< subsymbols
    PulseSpec pulse;

    void validate() const;
    std::size_t N() const noexcept { return K * M; }
};

struct GfdmBlock {
    GfdmConfig config;
    ComplexMatrix data;  ///< K rows x M columns

    void validate() const;
};

enum class GfdmReceiver { MatchedFilter, ZeroForcing };

/// Prototype filter g of length N with ||g||^2 = K. Built-in kinds are real.
ComplexVector make_pulse(const GfdmConfig& cfg);

/// Dense N x N modulation matrix from the closed-form column expression.
ComplexMatrix gfdm_modulation_matrix(const GfdmConfig& cfg);

ComplexVector gfdm_modulate(const GfdmBlock& block);

/// MF returns A^H x, ZF returns A^{-1} x, both reshaped to K x M.
/// ZF throws SingularMatrixError when A is singular.
GfdmBlock gfdm_demodulate(const ComplexVector& x, const GfdmConfig& cfg, GfdmReceiver mode);

/// 2-norm condition number of A; +inf when A is numerically singular.
double gfdm_condition_number(const GfdmConfig& cfg);

/// Precomputed modulator state: the prototype and, on request, an LU
/// factorization of A for repeated zero-forcing. Immutable once built.
class GfdmModem {
  public:
    explicit GfdmModem(GfdmConfig cfg, bool factorize_zf = false);

    const GfdmConfig& config() const noexcept { return cfg_; }
    const ComplexVector& pulse() const noexcept { return pulse_; }

    ComplexVector modulate(const ComplexMatrix& data) const;
    ComplexMatrix demodulate_mf(const ComplexVector& x) const;
    ComplexMatrix demodulate_zf(const ComplexVector& x) const;

  private:
    void check_samples(const ComplexVector& x) const;

    GfdmConfig cfg_;
    ComplexVector pulse_;
    std::shared_ptr<const LuDecomposition> lu_;
};

}  // namespace mcw
