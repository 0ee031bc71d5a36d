#include "mcwave/spectral.hpp"

#include <algorithm>
#include <random>

#include "mcwave/fft.hpp"
#include "mcwave/linalg.hpp"

namespace mcw {

double SpectrumReport::parseval_error() const {
    double acc = 0.0;
    for (double m : magnitude) acc += m * m;
    return std::abs(acc - signal_energy);
}

SpectrumReport analyze_spectrum(const ComplexVector& x) {
    SpectrumReport report;
    report.bins = fft(x);
    report.magnitude.reserve(x.size());
    for (const auto& z : report.bins) report.magnitude.push_back(std::abs(z));
    const double energy = norm2(x);
    report.signal_energy = energy * energy;
    return report;
}

double window_energy_fraction(const ComplexVector& bins, std::int64_t center, std::size_t below, std::size_t above) {
    const std::size_t n = bins.size();
    double total = 0.0;
    for (const auto& z : bins) total += std::norm(z);
    if (total == 0.0) return 0.0;
    if (below + above >= n) return 1.0;
    const auto ni = static_cast<std::int64_t>(n);
    double inside = 0.0;
    for (std::int64_t off = -static_cast<std::int64_t>(below); off < static_cast<std::int64_t>(above); ++off) {
        const std::int64_t f = ((center + off) % ni + ni) % ni;
        inside += std::norm(bins[static_cast<std::size_t>(f)]);
    }
    return inside / total;
}

namespace {

double energy(const ComplexVector& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return acc;
}

ComplexVector vofdm_row_frame(const VofdmConfig& cfg, std::size_t row, const ComplexVector& row_data) {
    ComplexVector d(cfg.N());
    for (std::size_t c = 0; c < cfg.L; ++c) d[c * cfg.M + row] = row_data[c];
    return d;
}

// Largest |share of energy in a cyclic L-bin window - L/N| over all windows.
double spread_uniformity(const ComplexVector& bins, std::size_t L) {
    const double expected = static_cast<double>(L) / static_cast<double>(bins.size());
    double worst = 0.0;
    for (std::size_t start = 0; start < bins.size(); ++start) {
        const double share = window_energy_fraction(bins, static_cast<std::int64_t>(start), 0, L);
        worst = std::max(worst, std::abs(share - expected));
    }
    return worst;
}

ComplexVector single_symbol_gfdm(const GfdmModem& modem, std::size_t k, std::size_t m) {
    ComplexMatrix d(modem.config().K, modem.config().M);
    d(k, m) = 1.0;
    return modem.modulate(d);
}

ComplexVector random_symbols(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(n);
    for (auto& z : v) z = {normal(rng), normal(rng)};
    return v;
}

CheckResult make_check(std::string name, double value, double tolerance, Bound bound,
                       const ComparisonOptions& options) {
    if (bound == Bound::AtMost && options.tolerance_override > 0.0) tolerance = options.tolerance_override;
    const bool pass = bound == Bound::AtMost ? value <= tolerance : value >= tolerance;
    return {std::move(name), value, tolerance, bound, pass};
}

}  // namespace

SpectrumReport check_vofdm_repetition(const VofdmConfig& cfg, std::size_t row, const ComplexVector& row_data) {
    cfg.validate();
    if (row >= cfg.M) throw ParameterError("spectral: row index out of range");
    if (row_data.size() != cfg.L) throw DimensionError("spectral: row data must have L entries");
    if (std::all_of(row_data.begin(), row_data.end(), [](const cplx& z) { return z == cplx{}; }))
        throw ParameterError("spectral: row data must contain a nonzero entry");

    SpectrumReport report = analyze_spectrum(vofdm_modulate({cfg, vofdm_row_frame(cfg, row, row_data)}));
    const std::size_t N = cfg.N();
    const cplx rotation = unit_root(static_cast<std::int64_t>(row), cfg.M);
    for (std::size_t f = 0; f < N; ++f) {
        const double err = std::abs(report.bins[(f + cfg.L) % N] - report.bins[f] * rotation);
        report.repetition_error = std::max(report.repetition_error, err);
        if (report.magnitude[f] > 1e-12) report.phase_ramp_error = std::max(report.phase_ramp_error, err);
    }
    report.inband_energy_fraction = window_energy_fraction(report.bins, 0, 0, cfg.L);
    return report;
}

SpectrumReport check_symbol_spread(const VofdmConfig& cfg, std::size_t symbol_index) {
    cfg.validate();
    if (cfg.M < 2) throw ParameterError("spectral: symbol spreading requires M >= 2");
    if (symbol_index >= cfg.N()) throw ParameterError("spectral: symbol index out of range");

    ComplexVector d(cfg.N());
    d[symbol_index] = 1.0;
    SpectrumReport report = analyze_spectrum(vofdm_modulate({cfg, d}));
    const double flat = 1.0 / std::sqrt(static_cast<double>(cfg.N()));
    for (double m : report.magnitude) report.flatness_error = std::max(report.flatness_error, std::abs(m - flat));
    report.spread_uniformity_error = spread_uniformity(report.bins, cfg.L);
    report.inband_energy_fraction = window_energy_fraction(report.bins, 0, 0, cfg.L);
    return report;
}

SpectrumReport check_gfdm_window(const GfdmConfig& cfg, std::size_t k, std::size_t m) {
    cfg.validate();
    if (k >= cfg.K || m >= cfg.M) throw ParameterError("spectral: (k, m) out of range");

    const GfdmModem modem(cfg);
    SpectrumReport report = analyze_spectrum(single_symbol_gfdm(modem, k, m));
    const ComplexVector window = fft(modem.pulse());
    const std::size_t N = cfg.N();
    const std::size_t offset = k * cfg.M;
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.K));
    for (std::size_t f = 0; f < N; ++f) {
        const double expected = std::abs(window[(f + N - offset) % N]) * scale;
        report.window_error = std::max(report.window_error, std::abs(report.magnitude[f] - expected));
    }
    report.inband_energy_fraction =
        window_energy_fraction(report.bins, static_cast<std::int64_t>(offset), cfg.M, cfg.M);
    return report;
}

SpectrumReport check_gfdm_repetition(const GfdmConfig& cfg, std::size_t k, const ComplexVector& subcarrier_data) {
    cfg.validate();
    if (k >= cfg.K) throw ParameterError("spectral: subcarrier index out of range");
    if (subcarrier_data.size() != cfg.M) throw DimensionError("spectral: subcarrier data must have M entries");

    const GfdmModem modem(cfg);
    ComplexMatrix d(cfg.K, cfg.M);
    for (std::size_t m = 0; m < cfg.M; ++m) d(k, m) = subcarrier_data[m];
    SpectrumReport report = analyze_spectrum(modem.modulate(d));
    const ComplexVector window = fft(modem.pulse());
    const std::size_t N = cfg.N();
    const std::size_t M = cfg.M;
    const std::size_t offset = k * M;
    for (std::size_t f = 0; f < N; ++f) {
        const cplx here = report.bins[(f + offset) % N] * window[(f + M) % N];
        const cplx next = report.bins[(f + M + offset) % N] * window[f];
        report.repetition_error = std::max(report.repetition_error, std::abs(here - next));
    }
    report.phase_ramp_error = report.repetition_error;
    report.inband_energy_fraction =
        window_energy_fraction(report.bins, static_cast<std::int64_t>(offset), cfg.M, cfg.M);
    return report;
}

double gfdm_time_localization(const GfdmConfig& cfg, std::size_t k, std::size_t m) {
    cfg.validate();
    if (k >= cfg.K || m >= cfg.M) throw ParameterError("spectral: (k, m) out of range");
    const ComplexVector x = single_symbol_gfdm(GfdmModem(cfg), k, m);
    const std::size_t N = cfg.N();
    if (2 * cfg.K >= N) return 1.0;
    double inside = 0.0;
    for (std::size_t off = 0; off < 2 * cfg.K; ++off) inside += std::norm(x[(m * cfg.K + N - cfg.K + off) % N]);
    return inside / energy(x);
}

bool ComparisonRow::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<ComparisonRow> comparison_report(const VofdmConfig& vcfg, const GfdmConfig& gcfg,
                                         const ComparisonOptions& options) {
    vcfg.validate();
    gcfg.validate();
    if (vcfg.N() != gcfg.N())
        throw ParameterError("comparison_report: VOFDM N = " + std::to_string(vcfg.N()) + " but GFDM N = " +
                             std::to_string(gcfg.N()));

    std::mt19937_64 rng(options.seed);
    const std::size_t N = vcfg.N();
    const GfdmModem modem(gcfg);
    const ComplexVector window = fft(modem.pulse());

    // Spectrum repetition per data-matrix row.
    double v_rep = 0.0, v_phase = 0.0;
    for (std::size_t row = 0; row < vcfg.M; ++row) {
        const auto report = check_vofdm_repetition(vcfg, row, random_symbols(vcfg.L, rng));
        v_rep = std::max(v_rep, report.repetition_error);
        v_phase = std::max(v_phase, report.phase_ramp_error);
    }
    double g_rep = 0.0;
    for (std::size_t k = 0; k < gcfg.K; ++k)
        g_rep = std::max(g_rep, check_gfdm_repetition(gcfg, k, random_symbols(gcfg.M, rng)).repetition_error);

    // Frequency-domain window and localization of single symbols.
    double g_window = 0.0, g_inband = 1.0, g_time = 1.0, g_shift = 0.0;
    std::vector<std::vector<double>> magnitudes(gcfg.K);
    for (std::size_t m = 0; m < gcfg.M; ++m) {
        for (std::size_t k = 0; k < gcfg.K; ++k) {
            const auto report = check_gfdm_window(gcfg, k, m);
            g_window = std::max(g_window, report.window_error);
            g_inband = std::min(g_inband, report.inband_energy_fraction);
            g_time = std::min(g_time, gfdm_time_localization(gcfg, k, m));
            magnitudes[k] = report.magnitude;
        }
        for (std::size_t k = 0; k + 1 < gcfg.K; ++k)
            for (std::size_t f = 0; f < N; ++f)
                g_shift = std::max(g_shift,
                                   std::abs(magnitudes[k + 1][(f + gcfg.M) % N] - magnitudes[k][f]));
    }

    double v_uniform = 0.0, v_freq_leak = 0.0;
    for (std::size_t s = 0; s < N; ++s) {
        ComplexVector d(N);
        d[s] = 1.0;
        const auto bins = fft(vofdm_modulate({vcfg, d}));
        v_uniform = std::max(v_uniform, spread_uniformity(bins, vcfg.L));
        const std::size_t column = s / vcfg.M;
        double outside = 0.0;
        for (std::size_t f = 0; f < N; ++f)
            if (f % vcfg.L != column) outside += std::norm(bins[f]);
        v_freq_leak = std::max(v_freq_leak, outside / energy(bins));
    }

    // Row-to-row change: VOFDM rows differ by a one-sample delay.
    double v_ramp = 0.0, v_time_leak = 0.0;
    const ComplexVector shared = random_symbols(vcfg.L, rng);
    for (std::size_t row = 0; row < vcfg.M; ++row) {
        const auto x = vofdm_modulate({vcfg, vofdm_row_frame(vcfg, row, shared)});
        double outside = 0.0;
        for (std::size_t n = 0; n < N; ++n)
            if (n % vcfg.M != row) outside += std::norm(x[n]);
        v_time_leak = std::max(v_time_leak, outside / energy(x));
        if (row + 1 == vcfg.M) continue;
        const auto here = fft(x);
        const auto next = fft(vofdm_modulate({vcfg, vofdm_row_frame(vcfg, row + 1, shared)}));
        for (std::size_t f = 0; f < N; ++f)
            v_ramp = std::max(v_ramp, std::abs(next[f] - here[f] * unit_root(static_cast<std::int64_t>(f), N)));
    }

    std::vector<ComparisonRow> rows;
    rows.push_back({"Frequency domain structure",
                    "spectrum repetition for each data matrix row",
                    "spectrum repetition for each data matrix row",
                    {make_check("vofdm_row_repetition_error", v_rep, 1e-9, Bound::AtMost, options),
                     make_check("vofdm_row_phase_rotation_error", v_phase, 1e-9, Bound::AtMost, options),
                     make_check("gfdm_row_repetition_error", g_rep, 1e-9, Bound::AtMost, options)}});
    rows.push_back({"Frequency domain window",
                    "localized (sparse) filter",
                    "rectangular of full bandwidth",
                    {make_check("gfdm_window_shape_error", g_window, 1e-9, Bound::AtMost, options),
                     make_check("gfdm_min_inband_energy_fraction", g_inband, options.min_inband_fraction,
                                Bound::AtLeast, options),
                     make_check("vofdm_spread_uniformity_error", v_uniform, 1e-10, Bound::AtMost, options)}});
    rows.push_back({"Filter change row to row",
                    "circular shift by one subcarrier",
                    "multiplication with complex exponential of increasing frequency",
                    {make_check("gfdm_adjacent_window_shift_error", g_shift, 1e-9, Bound::AtMost, options),
                     make_check("vofdm_adjacent_row_phase_ramp_error", v_ramp, 1e-10, Bound::AtMost, options)}});
    rows.push_back({"Localization",
                    "localized in time and frequency",
                    "interleaved in time and frequency",
                    {make_check("gfdm_min_time_localization", g_time, options.min_time_localization, Bound::AtLeast,
                                options),
                     make_check("vofdm_time_interleave_leakage", v_time_leak, 1e-10, Bound::AtMost, options),
                     make_check("vofdm_frequency_interleave_leakage", v_freq_leak, 1e-10, Bound::AtMost,
                                options)}});
    return rows;
}

std::vector<CheckResult> run_verification_suite(const VofdmConfig& vcfg, const GfdmConfig& gcfg,
                                                const ComparisonOptions& options) {
    std::vector<CheckResult> out;
    for (auto& row : comparison_report(vcfg, gcfg, options))
        for (auto& check : row.checks) out.push_back(std::move(check));

    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t N = vcfg.N();

    const ComplexVector d = random_symbols(N, rng);
    const ComplexVector xv = vofdm_modulate({vcfg, d});
    out.push_back(make_check("vofdm_fast_dense_error", max_abs_diff(xv, multiply(vofdm_modulation_matrix(vcfg), d)),
                             1e-10, Bound::AtMost, options));

    const ComplexVector dg = random_symbols(N, rng);
    const ComplexVector xg = gfdm_modulate({gcfg, reshape_cols(dg, gcfg.K, gcfg.M)});
    out.push_back(make_check("gfdm_fast_dense_error", max_abs_diff(xg, multiply(gfdm_modulation_matrix(gcfg), dg)),
                             1e-10, Bound::AtMost, options));

    const double parseval = std::max(analyze_spectrum(xv).parseval_error(), analyze_spectrum(xg).parseval_error());
    out.push_back(make_check("parseval_error", parseval, 1e-9, Bound::AtMost, options));
    return out;
}

const std::vector<std::string>& verification_check_names() {
    static const std::vector<std::string> names{
        "vofdm_row_repetition_error",
        "vofdm_row_phase_rotation_error",
        "gfdm_row_repetition_error",
        "gfdm_window_shape_error",
        "gfdm_min_inband_energy_fraction",
        "vofdm_spread_uniformity_error",
        "gfdm_adjacent_window_shift_error",
        "vofdm_adjacent_row_phase_ramp_error",
        "gfdm_min_time_localization",
        "vofdm_time_interleave_leakage",
        "vofdm_frequency_interleave_leakage",
        "vofdm_fast_dense_error",
        "gfdm_fast_dense_error",
        "parseval_error",
    };
    return names;
}

}  // namespace mcw
