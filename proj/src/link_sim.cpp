#include "mcwave/link_sim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "mcwave/fft.hpp"
#include "mcwave/linalg.hpp"
#include "mcwave/vofdm.hpp"

namespace mcw {

ComplexVector qpsk_map(const std::vector<std::uint8_t>& bits) {
    if (bits.empty() || bits.size() % 2 != 0)
        throw ParameterError("qpsk_map: bit count must be even and nonzero, got " + std::to_string(bits.size()));
    const double s = 1.0 / std::sqrt(2.0);
    ComplexVector out(bits.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {bits[2 * i] ? -s : s, bits[2 * i + 1] ? -s : s};
    return out;
}

std::vector<std::uint8_t> qpsk_demap(const ComplexVector& symbols) {
    std::vector<std::uint8_t> bits;
    bits.reserve(2 * symbols.size());
    for (const auto& z : symbols) {
        bits.push_back(z.real() < 0.0 ? 1 : 0);
        bits.push_back(z.imag() < 0.0 ? 1 : 0);
    }
    return bits;
}

void ChannelSpec::validate(std::size_t n) const {
    if (taps.size() > n)
        throw DimensionError("channel has " + std::to_string(taps.size()) + " taps, frame length is " +
                             std::to_string(n));
    if (!taps.all_finite()) throw ParameterError("channel taps must be finite");
    if (std::none_of(taps.begin(), taps.end(), [](const cplx& t) { return t != cplx(0.0); }))
        throw ParameterError("channel needs at least one nonzero tap");
}

ChannelSpec ChannelSpec::identity() { return {}; }

ChannelSpec ChannelSpec::two_tap_null() {
    const double s = 1.0 / std::sqrt(2.0);
    return {ComplexVector{s, s}, "two-tap [1,1]/sqrt(2), null at N/2"};
}

ComplexVector apply_channel(const ComplexVector& x, const ChannelSpec& ch) {
    const std::size_t n = x.size();
    ch.validate(n);
    ComplexVector y(n);
    for (std::size_t j = 0; j < ch.taps.size(); ++j) {
        const cplx t = ch.taps[j];
        if (t == cplx(0.0)) continue;
        for (std::size_t i = 0; i < n; ++i) y[(i + j) % n] += t * x[i];
    }
    return y;
}

ComplexVector channel_response(const ChannelSpec& ch, std::size_t n) {
    ch.validate(n);
    ComplexVector h(n);
    for (std::size_t f = 0; f < n; ++f)
        for (std::size_t j = 0; j < ch.taps.size(); ++j)
            h[f] += ch.taps[j] * unit_root(static_cast<std::int64_t>((f * j) % n), n);
    return h;
}

NoisySignal awgn(const ComplexVector& x, double snr_db, std::mt19937_64& rng) {
    if (std::isnan(snr_db)) throw ParameterError("awgn: SNR is NaN");
    if (snr_db == kNoiselessSnr) return {x, 0.0};
    const double nrm = norm2(x);
    const double es = nrm * nrm / static_cast<double>(x.size());
    const double variance = es / std::pow(10.0, snr_db / 10.0);
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    NoisySignal out{x, variance};
    for (auto& z : out.samples) z += cplx(normal(rng), normal(rng));
    return out;
}

std::string to_string(System s) {
    switch (s) {
        case System::Ofdm: return "OFDM";
        case System::Vofdm: return "VOFDM";
        case System::Gfdm: return "GFDM";
    }
    return "?";
}

System parse_system(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "ofdm") return System::Ofdm;
    if (lower == "vofdm") return System::Vofdm;
    if (lower == "gfdm") return System::Gfdm;
    throw ParameterError("unknown system '" + name + "' (expected ofdm, vofdm or gfdm)");
}

void LinkConfig::validate() const {
    if (N == 0) throw ParameterError("frame length N must be positive");
    if (system == System::Ofdm) return;
    if (M == 0 || N % M != 0)
        throw ParameterError("M = " + std::to_string(M) + " must divide N = " + std::to_string(N));
    if (system == System::Gfdm) GfdmConfig{N / M, M, pulse}.validate();
}

namespace {

// Everything a frame needs that does not change from frame to frame.
struct Link {
    LinkConfig cfg;
    ChannelSpec channel;
    double snr_db;
    ComplexVector response{1};
    std::unique_ptr<GfdmModem> gfdm;

    ComplexVector modulate(const ComplexVector& d) const {
        switch (cfg.system) {
            case System::Ofdm: return ifft(d);
            case System::Vofdm: return vofdm_modulate({{cfg.M, cfg.N / cfg.M}, d});
            case System::Gfdm: return gfdm->modulate(reshape_cols(d, cfg.N / cfg.M, cfg.M));
        }
        return d;
    }

    ComplexVector receive(const ComplexVector& y, double noise_variance) const {
        ComplexVector bins = fft(y);
        for (std::size_t f = 0; f < bins.size(); ++f) {
            const cplx h = response[f];
            if (cfg.system == System::Ofdm) {
                bins[f] = std::abs(h) < 1e-12 ? cplx(0.0) : bins[f] / h;
            } else {
                const double denom = std::norm(h) + noise_variance;
                bins[f] = denom == 0.0 ? cplx(0.0) : std::conj(h) * bins[f] / denom;
            }
        }
        switch (cfg.system) {
            case System::Ofdm: return bins;
            case System::Vofdm: return vofdm_demodulate(ifft(bins), {cfg.M, cfg.N / cfg.M});
            case System::Gfdm: return vec(gfdm->demodulate_zf(ifft(bins)));
        }
        return bins;
    }

    std::uint64_t frame_errors(std::uint64_t seed, std::uint64_t frame) const {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(frame >> 32)};
        std::mt19937_64 rng(seq);
        std::vector<std::uint8_t> bits(2 * cfg.N);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
        const auto rx = awgn(apply_channel(modulate(qpsk_map(bits)), channel), snr_db, rng);
        const auto decided = qpsk_demap(receive(rx.samples, rx.noise_variance));
        std::uint64_t errors = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) errors += bits[i] != decided[i];
        return errors;
    }
};

}  // namespace

BerResult run_ber(const LinkConfig& cfg, const ChannelSpec& ch, double snr_db, std::size_t n_frames,
                  std::uint64_t seed, unsigned threads) {
    cfg.validate();
    ch.validate(cfg.N);
    if (n_frames == 0) throw ParameterError("run_ber: need at least one frame");
    if (std::isnan(snr_db)) throw ParameterError("run_ber: SNR is NaN");

    Link link{cfg, ch, snr_db, channel_response(ch, cfg.N), nullptr};
    if (cfg.system == System::Gfdm)
        link.gfdm = std::make_unique<GfdmModem>(GfdmConfig{cfg.N / cfg.M, cfg.M, cfg.pulse}, true);

    threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(n_frames, 256)));
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::exception_ptr> failures(threads);
    auto work = [&](unsigned t) {
        try {
            const std::size_t begin = n_frames * t / threads;
            const std::size_t end = n_frames * (t + 1) / threads;
            for (std::size_t f = begin; f < end; ++f) partial[t] += link.frame_errors(seed, f);
        } catch (...) {
            failures[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    BerResult result;
    result.system = cfg.system;
    result.snr_db = snr_db;
    result.bits_sent = 2ull * cfg.N * n_frames;
    for (auto e : partial) result.bit_errors += e;
    result.ber = static_cast<double>(result.bit_errors) / static_cast<double>(result.bits_sent);
    result.seed = seed;
    return result;
}

}  // namespace mcw
