#include "mcwave/gfdm.hpp"

#include <cstdint>
#include <numbers>
#include <vector>

#include "mcwave/fft.hpp"

namespace mcw {

void GfdmConfig::validate() const {
    if (K < 1 || M < 1) throw ParameterError("GFDM: K and M must be >= 1");
    switch (pulse.kind) {
        case PulseKind::RaisedCosine:
            if (!(pulse.rolloff >= 0.0 && pulse.rolloff <= 1.0))
                throw ParameterError("GFDM: raised-cosine rolloff must lie in [0, 1]");
            break;
        case PulseKind::Custom:
            if (!pulse.samples) throw ParameterError("GFDM: custom pulse requires samples");
            if (pulse.samples->size() != N())
                throw DimensionError("GFDM: custom pulse has " + std::to_string(pulse.samples->size()) +
                                     " samples, expected N = " + std::to_string(N()));
            if (!pulse.samples->all_finite()) throw ParameterError("GFDM: custom pulse is not finite");
            break;
        default:
            break;
    }
}

void GfdmBlock::validate() const {
    config.validate();
    if (data.rows() != config.K || data.cols() != config.M)
        throw DimensionError("GFDM: data block is " + std::to_string(data.rows()) + "x" +
                             std::to_string(data.cols()) + ", expected K x M = " + std::to_string(config.K) + "x" +
                             std::to_string(config.M));
    if (!data.all_finite()) throw ParameterError("GFDM: data block contains non-finite symbols");
}

namespace {

// Continuous raised-cosine spectrum, normalized to 1 in the passband, as a
// function of x = |frequency| / (half symbol rate).
double rc_spectrum(double x, double rolloff) {
    if (x <= 1.0 - rolloff) return 1.0;
    if (x > 1.0 + rolloff) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi / (2.0 * rolloff) * (x - (1.0 - rolloff))));
}

// Sampling the RC impulse response at spacing K and wrapping it onto N
// samples makes its DFT the aliased sum of the continuous spectrum, which is
// compactly supported, so the periodized pulse is computed exactly from the
// frequency side.
ComplexVector raised_cosine_shape(std::size_t K, std::size_t M, double rolloff) {
    const std::size_t N = K * M;
    const auto n_i = static_cast<std::int64_t>(N);
    ComplexVector spectrum(N);
    for (std::size_t f = 0; f < N; ++f) {
        double acc = 0.0;
        for (std::int64_t p = -2; p <= 2; ++p) {
            const std::int64_t j = static_cast<std::int64_t>(f) - p * n_i;
            const std::int64_t twice_kj = 2 * static_cast<std::int64_t>(K) * (j < 0 ? -j : j);
            if (rolloff == 0.0) {
                // Ideal lowpass: the band edge takes the midpoint of the jump.
                if (twice_kj < n_i)
                    acc += 1.0;
                else if (twice_kj == n_i)
                    acc += 0.5;
            } else {
                acc += rc_spectrum(static_cast<double>(twice_kj) / static_cast<double>(N), rolloff);
            }
        }
        spectrum[f] = acc;
    }
    ComplexVector g = ifft(spectrum);
    for (auto& z : g) z = z.real();
    return g;
}

ComplexVector scale_to_energy(ComplexVector g, double energy) {
    const double norm = norm2(g);
    if (norm == 0.0) throw ParameterError("GFDM: pulse has zero energy");
    const double scale = std::sqrt(energy) / norm;
    for (auto& z : g) z *= scale;
    return g;
}

}  // namespace

ComplexVector make_pulse(const GfdmConfig& cfg) {
    cfg.validate();
    const std::size_t N = cfg.N();
    const auto energy = static_cast<double>(cfg.K);
    switch (cfg.pulse.kind) {
        case PulseKind::RaisedCosine:
            return scale_to_energy(raised_cosine_shape(cfg.K, cfg.M, cfg.pulse.rolloff), energy);
        case PulseKind::Dirichlet:
            return scale_to_energy(raised_cosine_shape(cfg.K, cfg.M, 0.0), energy);
        case PulseKind::RectSubsymbol: {
            ComplexVector g(N);
            for (std::size_t n = 0; n < cfg.K; ++n) g[n] = 1.0;
            return scale_to_energy(std::move(g), energy);
        }
        case PulseKind::Custom:
            return scale_to_energy(*cfg.pulse.samples, energy);
    }
    throw ParameterError("GFDM: unknown pulse kind");
}

ComplexMatrix gfdm_modulation_matrix(const GfdmConfig& cfg) {
    const ComplexVector g = make_pulse(cfg);
    const std::size_t K = cfg.K;
    const std::size_t N = cfg.N();
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    ComplexMatrix a(N, N);
    for (std::size_t m = 0; m < cfg.M; ++m)
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < N; ++n) {
                const cplx carrier = std::conj(unit_root(static_cast<std::int64_t>(k * n), K)) * scale;
                a(n, m * K + k) = g[(n + N - m * K) % N] * carrier;
            }
    return a;
}

GfdmModem::GfdmModem(GfdmConfig cfg, bool factorize_zf) : cfg_(std::move(cfg)), pulse_(make_pulse(cfg_)) {
    if (factorize_zf) lu_ = std::make_shared<const LuDecomposition>(gfdm_modulation_matrix(cfg_));
}

ComplexVector GfdmModem::modulate(const ComplexMatrix& data) const {
    GfdmBlock{cfg_, data}.validate();
    const std::size_t K = cfg_.K;
    const std::size_t N = cfg_.N();
    const FftPlan plan(K);
    std::vector<cplx> sub(K);
    ComplexVector x(N);
    for (std::size_t m = 0; m < cfg_.M; ++m) {
        for (std::size_t k = 0; k < K; ++k) sub[k] = data(k, m);
        plan.inverse(sub);
        // Tile the subsymbol over the block and window it with C_{mK} g.
        for (std::size_t n = 0; n < N; ++n) {
            const cplx term = pulse_[(n + N - m * K) % N] * sub[n % K];
            x[n] = m == 0 ? term : x[n] + term;
        }
    }
    return x;
}

void GfdmModem::check_samples(const ComplexVector& x) const {
    if (x.size() != cfg_.N())
        throw DimensionError("GFDM: received " + std::to_string(x.size()) + " samples, expected N = " +
                             std::to_string(cfg_.N()));
}

ComplexMatrix GfdmModem::demodulate_mf(const ComplexVector& x) const {
    check_samples(x);
    const std::size_t K = cfg_.K;
    const std::size_t N = cfg_.N();
    const FftPlan plan(K);
    std::vector<cplx> folded(K);
    ComplexMatrix out(K, cfg_.M);
    for (std::size_t m = 0; m < cfg_.M; ++m) {
        std::fill(folded.begin(), folded.end(), cplx{});
        for (std::size_t n = 0; n < N; ++n) folded[n % K] += std::conj(pulse_[(n + N - m * K) % N]) * x[n];
        plan.forward(folded);
        for (std::size_t k = 0; k < K; ++k) out(k, m) = folded[k];
    }
    return out;
}

ComplexMatrix GfdmModem::demodulate_zf(const ComplexVector& x) const {
    check_samples(x);
    const ComplexVector d = lu_ ? lu_->solve(x) : solve(gfdm_modulation_matrix(cfg_), x);
    return reshape_cols(d, cfg_.K, cfg_.M);
}

ComplexVector gfdm_modulate(const GfdmBlock& block) {
    block.validate();
    return GfdmModem(block.config).modulate(block.data);
}

GfdmBlock gfdm_demodulate(const ComplexVector& x, const GfdmConfig& cfg, GfdmReceiver mode) {
    const GfdmModem modem(cfg);
    switch (mode) {
        case GfdmReceiver::MatchedFilter:
            return {cfg, modem.demodulate_mf(x)};
        case GfdmReceiver::ZeroForcing:
            return {cfg, modem.demodulate_zf(x)};
    }
    throw ParameterError("GFDM: unknown receiver mode");
}

double gfdm_condition_number(const GfdmConfig& cfg) { return condition_number(gfdm_modulation_matrix(cfg)); }

}  // namespace mcw
