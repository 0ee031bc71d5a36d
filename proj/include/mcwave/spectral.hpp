#pragma once

// Frequency-domain checks for the two modulators. Every structural property is
// reduced to a scalar error or energy fraction that can be compared against a
// fixed tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include "mcwave/gfdm.hpp"
#include "mcwave/types.hpp"
#include "mcwave/vofdm.hpp"

namespace mcw {

struct SpectrumReport {
    ComplexVector bins{1};          ///< unitary FFT of the transmit signal
    std::vector<double> magnitude;  ///< |bins[f]|
    double signal_energy = 0.0;     ///< ||x||^2 of the analysed signal

    double repetition_error = 0.0;
    double phase_ramp_error = 0.0;
    double inband_energy_fraction = 0.0;

    /// GFDM: max | |X[f]| - |G[f - kM]| / sqrt(K) |.
    double window_error = 0.0;
    /// VOFDM single symbol: max | |X[f]| - 1/sqrt(N) |.
    double flatness_error = 0.0;
    /// VOFDM single symbol: max over cyclic L-bin windows of |energy share - L/N|.
    double spread_uniformity_error = 0.0;

    /// | sum |X|^2 - ||x||^2 |.
    double parseval_error() const;
};

SpectrumReport analyze_spectrum(const ComplexVector& x);

/// Share of spectral energy in bins center + [-below, above) (cyclic). A
/// window of N or more bins covers everything.
double window_energy_fraction(const ComplexVector& bins, std::int64_t center, std::size_t below, std::size_t above);

/// VOFDM frame with only `row` of D populated. Checks X[f + L] = X[f] e^{-2 pi i row/M}.
SpectrumReport check_vofdm_repetition(const VofdmConfig& cfg, std::size_t row, const ComplexVector& row_data);

/// VOFDM frame d = e_{symbol_index}. Requires M >= 2: with M = 1 a symbol is a
/// single OFDM bin and the spreading question does not apply.
SpectrumReport check_symbol_spread(const VofdmConfig& cfg, std::size_t symbol_index);

/// GFDM block with a single unit symbol at (k, m). inband_energy_fraction is
/// measured over the 2M bins kM + [-M, M).
SpectrumReport check_gfdm_window(const GfdmConfig& cfg, std::size_t k, std::size_t m);

/// GFDM block with subcarrier k carrying `subcarrier_data` (length M) on all
/// subsymbols. The windowed spectrum X[f + kM] / G[f] must be M-periodic; the
/// check uses the cross-multiplied form so no division by small G is needed.
SpectrumReport check_gfdm_repetition(const GfdmConfig& cfg, std::size_t k, const ComplexVector& subcarrier_data);

/// Share of a single-symbol GFDM signal's energy within samples mK + [-K, K).
double gfdm_time_localization(const GfdmConfig& cfg, std::size_t k, std::size_t m);

// ---------------------------------------------------------------------------
// Side-by-side comparison

enum class Bound { AtMost, AtLeast };

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::AtMost;
    bool pass = false;
};

struct ComparisonRow {
    std::string aspect;
    std::string gfdm;
    std::string vofdm;
    std::vector<CheckResult> checks;

    bool pass() const;
};

struct ComparisonOptions {
    std::uint64_t seed = 1;
    /// Replaces the tolerance of every AtMost check when set (> 0).
    double tolerance_override = 0.0;
    /// Minimum in-band share for a GFDM single symbol over its 2M-bin window.
    double min_inband_fraction = 0.9;
    /// Minimum time-domain share for a GFDM single symbol over its 2K samples.
    double min_time_localization = 0.9;
};

/// One row per comparison aspect, each backed by computed checks. Throws
/// ParameterError when the two frame lengths differ.
std::vector<ComparisonRow> comparison_report(const VofdmConfig& vcfg, const GfdmConfig& gcfg,
                                         const ComparisonOptions& options = {});

/// The full suite used by `mcwave verify`: every comparison check followed by
/// fast/dense equivalence and Parseval checks, in a fixed order.
std::vector<CheckResult> run_verification_suite(const VofdmConfig& vcfg, const GfdmConfig& gcfg,
                                                const ComparisonOptions& options = {});

/// Names produced by run_verification_suite, in order.
const std::vector<std::string>& verification_check_names();

}  // namespace mcw
