#pragma once

// Uncoded link-level harness: QPSK over a cyclic multipath channel with AWGN,
// one receiver per waveform, bit error counting.

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mcwave/gfdm.hpp"
#include "mcwave/types.hpp"

namespace mcw {

/// Gray-mapped unit-energy QPSK: (b0, b1) -> ((1 - 2 b0) + i (1 - 2 b1)) / sqrt(2).
/// Throws ParameterError on an odd bit count.
ComplexVector qpsk_map(const std::vector<std::uint8_t>& bits);

/// Sign decisions; a component that is negative decodes to 1, anything else to 0.
std::vector<std::uint8_t> qpsk_demap(const ComplexVector& symbols);

struct ChannelSpec {
    ComplexVector taps{cplx(1.0)};
    std::string description = "identity";

    /// At least one nonzero finite tap and no more than n taps.
    void validate(std::size_t n) const;

    static ChannelSpec identity();
    /// [1, 1] / sqrt(2): exact null at bin N/2 for even N.
    static ChannelSpec two_tap_null();
};

/// y[n] = sum_j taps[j] x[(n - j) mod N].
ComplexVector apply_channel(const ComplexVector& x, const ChannelSpec& ch);

/// Frequency response sum_j taps[j] exp(-2 pi i f j / n), f = 0..n-1. With the
/// unitary FFT the channel acts as Y[f] = H[f] X[f].
ComplexVector channel_response(const ChannelSpec& ch, std::size_t n);

struct NoisySignal {
    ComplexVector samples;
    double noise_variance = 0.0;  ///< per complex sample
};

/// Adds circular complex Gaussian noise of variance (||x||^2 / N) / 10^(snr_db/10).
/// snr_db = +inf returns x unchanged with zero variance.
NoisySignal awgn(const ComplexVector& x, double snr_db, std::mt19937_64& rng);

inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

enum class System { Ofdm, Vofdm, Gfdm };

std::string to_string(System s);
/// "ofdm", "vofdm", "gfdm" (case-insensitive). Throws ParameterError otherwise.
System parse_system(const std::string& name);

struct LinkConfig {
    System system = System::Ofdm;
    std::size_t N = 16;
    /// VOFDM rows or GFDM subsymbols; must divide N. Ignored for OFDM.
    std::size_t M = 1;
    /// GFDM prototype.
    PulseSpec pulse;

    void validate() const;
};

struct BerResult {
    System system = System::Ofdm;
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    std::uint64_t seed = 0;
};

/// Simulates n_frames independent frames. Frame f draws bits and noise from
/// its own generator seeded by (seed, f), so the result does not depend on
/// `threads`. Receivers: OFDM per-bin ZF (bins with |H| < 1e-12 are zeroed),
/// VOFDM per-bin MMSE followed by V^H, GFDM per-bin MMSE followed by A^{-1}.
/// GFDM with a singular A throws SingularMatrixError.
BerResult run_ber(const LinkConfig& cfg, const ChannelSpec& ch, double snr_db, std::size_t n_frames,
                  std::uint64_t seed, unsigned threads = 1);

}  // namespace mcw
