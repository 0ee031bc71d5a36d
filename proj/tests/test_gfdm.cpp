#include <doctest.h>

#include <Eigen/Dense>
#include <limits>

#include "mcwave/fft.hpp"
#include "mcwave/gfdm.hpp"
#include "mcwave/linalg.hpp"
#include "mcwave/vofdm.hpp"
#include "test_support.hpp"

using namespace mcw;
using namespace mcw::testing;

namespace {

GfdmConfig rc(std::size_t K, std::size_t M, double rolloff) { return {K, M, {PulseKind::RaisedCosine, rolloff, {}}}; }
GfdmConfig rect(std::size_t K, std::size_t M) { return {K, M, {PulseKind::RectSubsymbol, 0.0, {}}}; }
GfdmConfig dirichlet(std::size_t K, std::size_t M) { return {K, M, {PulseKind::Dirichlet, 0.0, {}}}; }

GfdmConfig random_config(std::mt19937_64& rng) {
    const std::size_t K = uniform_index(1, 16, rng);
    const std::size_t M = uniform_index(1, 8, rng);
    switch (uniform_index(0, 4, rng)) {
        case 0: return rc(K, M, 0.1);
        case 1: return rc(K, M, 0.5);
        case 2: return rc(K, M, 0.9);
        case 3: return rect(K, M);
        default: return dirichlet(K, M);
    }
}

// a_{k,m}[n] = g[(n - mK) mod N] exp(2 pi i k n / K) / sqrt(K), evaluated with
// std::polar so it shares no code with the library's twiddle helper.
cplx column_formula(const ComplexVector& g, std::size_t K, std::size_t N, std::size_t k, std::size_t m, std::size_t n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * n) % K) / static_cast<double>(K);
    return g[(n + N - (m * K) % N) % N] * std::polar(1.0 / std::sqrt(static_cast<double>(K)), angle);
}

// Block form [diag(C_0 g) ... diag(C_{(M-1)K} g)] (I_M kron (R F_K^H)) with R
// the periodic tiling matrix 1_M kron I_K, assembled from linalg primitives.
ComplexMatrix block_form(const GfdmConfig& cfg, const ComplexVector& g) {
    const std::size_t K = cfg.K, M = cfg.M, N = cfg.N();
    ComplexMatrix ones_m(M, 1);
    for (std::size_t i = 0; i < M; ++i) ones_m(i, 0) = 1.0;
    const auto tile = kronecker(ones_m, identity(K));
    const auto per_subsymbol = multiply(tile, adjoint(dft_matrix(K)));

    ComplexMatrix windows(N, N * M);
    for (std::size_t m = 0; m < M; ++m) {
        const auto d = diag_embed(circular_shift(g, static_cast<std::int64_t>(m * K)));
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) windows(r, m * N + c) = d(r, c);
    }
    return multiply(windows, kronecker(identity(M), per_subsymbol));
}

ComplexMatrix random_block(const GfdmConfig& cfg, std::mt19937_64& rng) {
    return random_matrix(cfg.K, cfg.M, rng);
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd e(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c);
    return e;
}

}  // namespace

TEST_CASE("make_pulse") {
    SUBCASE("rect occupies the first subsymbol") {
        const auto g = make_pulse(rect(4, 2));
        CHECK(g == ComplexVector{1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0});
    }

    SUBCASE("every kind carries energy K") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 40; ++trial) {
            const auto cfg = random_config(rng);
            CHECK(norm2(make_pulse(cfg)) == doctest::Approx(std::sqrt(static_cast<double>(cfg.K))).epsilon(1e-12));
        }
        GfdmConfig custom{3, 2, {PulseKind::Custom, 0.0, random_vector(6, rng)}};
        CHECK(norm2(make_pulse(custom)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    }

    SUBCASE("raised cosine matches the periodized impulse response summed in time") {
        for (double rolloff : {0.1, 0.25, 0.5, 0.9, 1.0})
            for (auto [K, M] : {std::pair<std::size_t, std::size_t>{8, 4}, {4, 3}, {16, 7}, {1, 5}, {2, 2}}) {
                const auto g = make_pulse(rc(K, M, rolloff));
                const auto oracle = periodized_rc(K, M, rolloff, 4000, static_cast<double>(K));
                for (std::size_t n = 0; n < K * M; ++n) CHECK(std::abs(g[n] - oracle[n]) < 1e-9);
            }
        // The rolloff-0 sum decays like 1/t, so the truncated oracle is looser.
        const auto g = make_pulse(dirichlet(8, 4));
        const auto oracle = periodized_rc(8, 4, 0.0, 200000, 8.0);
        for (std::size_t n = 0; n < 32; ++n) CHECK(std::abs(g[n] - oracle[n]) < 1e-5);
    }

    SUBCASE("built-in pulses are real and zero phase") {
        for (const auto& cfg : {rc(8, 5, 0.3), dirichlet(4, 6), rc(3, 4, 1.0)}) {
            const auto g = make_pulse(cfg);
            const std::size_t N = cfg.N();
            for (std::size_t n = 0; n < N; ++n) {
                CHECK(g[n].imag() == 0.0);
                CHECK(std::abs(g[n] - g[(N - n) % N]) < 1e-14);
            }
        }
    }

    SUBCASE("rolloff 0.5, K=8, M=4 keeps all spectral energy within 2M bins of DC") {
        const auto spectrum = naive_dft(make_pulse(rc(8, 4, 0.5)));
        double inside = 0.0, total = 0.0;
        for (std::size_t f = 0; f < 32; ++f) {
            const auto centered = static_cast<long>(f < 16 ? f : f - 32);
            total += std::norm(spectrum[f]);
            if (centered >= -4 && centered < 4) inside += std::norm(spectrum[f]);
        }
        // Oracle value: the RC spectrum vanishes beyond (1 + 0.5) * M / 2 = 3 bins.
        CHECK(inside / total >= 1.0 - 1e-12);
    }

    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(make_pulse(rc(4, 2, 1.5)), ParameterError);
        CHECK_THROWS_AS(make_pulse(rc(4, 2, -0.1)), ParameterError);
        CHECK_THROWS_AS(make_pulse({4, 2, {PulseKind::Custom, 0.0, ComplexVector(7)}}), DimensionError);
        CHECK_THROWS_AS(make_pulse({4, 2, {PulseKind::Custom, 0.0, {}}}), ParameterError);
        CHECK_THROWS_AS(make_pulse({4, 2, {PulseKind::Custom, 0.0, ComplexVector(8)}}), ParameterError);
        CHECK_THROWS_AS(make_pulse(rc(0, 2, 0.5)), ParameterError);
    }
}

TEST_CASE("modulation matrix") {
    SUBCASE("M = 1 with rect pulse is the unitary IDFT") {
        for (std::size_t K : {1u, 2u, 4u, 7u, 12u}) CHECK(gfdm_modulation_matrix(rect(K, 1)) == adjoint(dft_matrix(K)));
    }

    SUBCASE("K = 1 columns are circular shifts of the prototype") {
        std::mt19937_64 rng(8);
        const GfdmConfig cfg{1, 6, {PulseKind::Custom, 0.0, random_vector(6, rng)}};
        const auto g = make_pulse(cfg);
        const auto a = gfdm_modulation_matrix(cfg);
        for (std::size_t m = 0; m < 6; ++m) {
            const auto shifted = circular_shift(g, static_cast<std::int64_t>(m));
            for (std::size_t n = 0; n < 6; ++n) CHECK(a(n, m) == shifted[n]);
        }
    }

    SUBCASE("block form and closed-form columns agree") {
        std::mt19937_64 rng(9);
        const GfdmConfig small{2, 2, {PulseKind::Custom, 0.0, random_vector(4, rng)}};
        CHECK(max_diff(block_form(small, make_pulse(small)), gfdm_modulation_matrix(small)) < 1e-12);
        for (int trial = 0; trial < 30; ++trial) {
            const auto cfg = random_config(rng);
            if (cfg.N() > 48) continue;
            CHECK(max_diff(block_form(cfg, make_pulse(cfg)), gfdm_modulation_matrix(cfg)) < 1e-12);
        }
    }

    SUBCASE("every column matches a_{k,m}[n]") {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 40; ++trial) {
            const auto cfg = random_config(rng);
            const auto g = make_pulse(cfg);
            const auto a = gfdm_modulation_matrix(cfg);
            double worst = 0.0;
            for (std::size_t m = 0; m < cfg.M; ++m)
                for (std::size_t k = 0; k < cfg.K; ++k)
                    for (std::size_t n = 0; n < cfg.N(); ++n)
                        worst = std::max(worst, std::abs(a(n, m * cfg.K + k) - column_formula(g, cfg.K, cfg.N(), k, m, n)));
            CHECK(worst < 1e-12);
        }
    }

    SUBCASE("sample-hold repetition I_K kron 1_M does not reproduce the columns") {
        const auto cfg = rc(4, 3, 0.5);
        const auto g = make_pulse(cfg);
        ComplexMatrix ones_m(3, 1);
        for (std::size_t i = 0; i < 3; ++i) ones_m(i, 0) = 1.0;
        const auto hold = multiply(kronecker(identity(4), ones_m), adjoint(dft_matrix(4)));
        const auto window = diag_embed(g);
        const auto first_subsymbol = multiply(window, hold);
        const auto a = gfdm_modulation_matrix(cfg);
        double diff = 0.0;
        for (std::size_t n = 0; n < 12; ++n)
            for (std::size_t k = 0; k < 4; ++k) diff = std::max(diff, std::abs(first_subsymbol(n, k) - a(n, k)));
        CHECK(diff > 0.1);
    }
}

TEST_CASE("fast modulation") {
    std::mt19937_64 rng(20);

    SUBCASE("single active symbol reproduces one matrix column") {
        const auto cfg = rc(6, 4, 0.4);
        const auto g = make_pulse(cfg);
        for (std::size_t k = 0; k < 6; ++k)
            for (std::size_t m = 0; m < 4; ++m) {
                ComplexMatrix d(6, 4);
                d(k, m) = 1.0;
                const auto x = gfdm_modulate({cfg, d});
                for (std::size_t n = 0; n < 24; ++n) CHECK(std::abs(x[n] - column_formula(g, 6, 24, k, m, n)) < 1e-12);
            }
    }

    SUBCASE("M = 1 with rect pulse equals the unitary IFFT") {
        for (std::size_t K : {1u, 3u, 8u, 10u}) {
            const auto d = random_matrix(K, 1, rng);
            CHECK(max_diff(gfdm_modulate({rect(K, 1), d}), ifft(vec(d))) < 1e-15);
        }
    }

    SUBCASE("K=8, M=5, RC 0.3 agrees with A vec(D)") {
        const auto cfg = rc(8, 5, 0.3);
        const auto d = random_block(cfg, rng);
        CHECK(max_diff(gfdm_modulate({cfg, d}), naive_matvec(gfdm_modulation_matrix(cfg), vec(d))) < 1e-10);
    }

    SUBCASE("fast and dense agree over random draws") {
        for (int trial = 0; trial < 120; ++trial) {
            const auto cfg = random_config(rng);
            const auto d = random_block(cfg, rng);
            CHECK(max_diff(gfdm_modulate({cfg, d}), naive_matvec(gfdm_modulation_matrix(cfg), vec(d))) < 1e-10);
        }
    }

    SUBCASE("linearity") {
        const auto cfg = rc(5, 3, 0.7);
        const auto d1 = random_block(cfg, rng);
        const auto d2 = random_block(cfg, rng);
        const cplx alpha(1.5, -0.25), beta(-0.5, 2.0);
        ComplexMatrix mix(5, 3);
        for (std::size_t k = 0; k < 5; ++k)
            for (std::size_t m = 0; m < 3; ++m) mix(k, m) = alpha * d1(k, m) + beta * d2(k, m);
        const auto x1 = gfdm_modulate({cfg, d1});
        const auto x2 = gfdm_modulate({cfg, d2});
        const auto xm = gfdm_modulate({cfg, mix});
        for (std::size_t n = 0; n < 15; ++n) CHECK(std::abs(xm[n] - (alpha * x1[n] + beta * x2[n])) < 1e-10);
    }

    SUBCASE("OFDM degeneracy against VOFDM with M = 1") {
        for (std::size_t K = 2; K <= 32; ++K) {
            const auto d = random_vector(K, rng);
            const auto gfdm = gfdm_modulate({rect(K, 1), reshape_cols(d, K, 1)});
            const auto vofdm = vofdm_modulate({{1, K}, d});
            CHECK(max_diff(gfdm, vofdm) < 1e-10);
        }
    }

    SUBCASE("spectrum magnitude of one subsymbol does not depend on its position") {
        const auto cfg = rc(4, 5, 0.5);
        const auto column = random_vector(4, rng);
        std::vector<double> reference;
        for (std::size_t m = 0; m < 5; ++m) {
            ComplexMatrix d(4, 5);
            for (std::size_t k = 0; k < 4; ++k) d(k, m) = column[k];
            const auto spectrum = fft(gfdm_modulate({cfg, d}));
            if (m == 0) {
                for (const auto& z : spectrum) reference.push_back(std::abs(z));
                continue;
            }
            for (std::size_t f = 0; f < 20; ++f) CHECK(std::abs(std::abs(spectrum[f]) - reference[f]) < 1e-12);
        }
    }

    SUBCASE("shape errors") {
        CHECK_THROWS_AS(gfdm_modulate({rc(4, 3, 0.5), ComplexMatrix(3, 4)}), DimensionError);
        CHECK_THROWS_AS(gfdm_demodulate(ComplexVector(11), rc(4, 3, 0.5), GfdmReceiver::MatchedFilter),
                        DimensionError);
    }
}

TEST_CASE("receivers") {
    std::mt19937_64 rng(30);

    SUBCASE("zero forcing inverts the modulator for K=8, M=5, RC 0.3") {
        const auto cfg = rc(8, 5, 0.3);
        const auto d = random_block(cfg, rng);
        const auto out = gfdm_demodulate(gfdm_modulate({cfg, d}), cfg, GfdmReceiver::ZeroForcing);
        CHECK(max_diff(out.data, d) < 1e-8);
    }

    SUBCASE("matched filter is exact in the OFDM reduction") {
        const auto cfg = rect(8, 1);
        const auto d = random_block(cfg, rng);
        CHECK(max_diff(gfdm_demodulate(gfdm_modulate({cfg, d}), cfg, GfdmReceiver::MatchedFilter).data, d) < 1e-12);
    }

    SUBCASE("fast matched filter equals A^H x") {
        for (int trial = 0; trial < 30; ++trial) {
            const auto cfg = random_config(rng);
            const auto x = random_vector(cfg.N(), rng);
            const auto dense = naive_matvec(adjoint(gfdm_modulation_matrix(cfg)), x);
            CHECK(max_diff(vec(gfdm_demodulate(x, cfg, GfdmReceiver::MatchedFilter).data), dense) < 1e-10);
        }
    }

    SUBCASE("matched filter peaks at the transmitted position") {
        const auto cfg = rc(6, 5, 0.5);
        for (std::size_t k = 0; k < 6; ++k)
            for (std::size_t m = 0; m < 5; ++m) {
                ComplexMatrix d(6, 5);
                d(k, m) = 1.0;
                const auto est = gfdm_demodulate(gfdm_modulate({cfg, d}), cfg, GfdmReceiver::MatchedFilter).data;
                std::size_t best_k = 0, best_m = 0;
                for (std::size_t kk = 0; kk < 6; ++kk)
                    for (std::size_t mm = 0; mm < 5; ++mm)
                        if (std::abs(est(kk, mm)) > std::abs(est(best_k, best_m))) best_k = kk, best_m = mm;
                CHECK(best_k == k);
                CHECK(best_m == m);
            }
    }

    SUBCASE("prefactorized modem matches the free function") {
        const auto cfg = rc(4, 5, 0.6);
        const GfdmModem modem(cfg, true);
        const auto x = random_vector(20, rng);
        CHECK(max_diff(modem.demodulate_zf(x), gfdm_demodulate(x, cfg, GfdmReceiver::ZeroForcing).data) < 1e-12);
    }
}

TEST_CASE("condition number") {
    CHECK(gfdm_condition_number(rect(8, 1)) == doctest::Approx(1.0).epsilon(1e-8));

    SUBCASE("K=8, M=5, RC 0.3 regression baseline from Eigen's SVD") {
        const auto cfg = rc(8, 5, 0.3);
        const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen(gfdm_modulation_matrix(cfg))).singularValues();
        const double oracle = sv(0) / sv(sv.size() - 1);
        CHECK(gfdm_condition_number(cfg) == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(gfdm_condition_number(cfg) == doctest::Approx(1.1547005383792515).epsilon(1e-8));
    }

    SUBCASE("K=4, M=4, RC 0.25 is singular (even M with a raised cosine)") {
        const auto cfg = rc(4, 4, 0.25);
        const auto sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(to_eigen(gfdm_modulation_matrix(cfg))).singularValues();
        CHECK(sv(sv.size() - 1) / sv(0) < 1e-13);
        CHECK(gfdm_condition_number(cfg) == std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(gfdm_demodulate(ComplexVector(16), cfg, GfdmReceiver::ZeroForcing), SingularMatrixError);
    }

    SUBCASE("K=1 prototype with a spectral zero makes A a singular circulant") {
        // FFT of [1, 1, 0, 0] vanishes at bin 2.
        const GfdmConfig cfg{1, 4, {PulseKind::Custom, 0.0, ComplexVector{1.0, 1.0, 0.0, 0.0}}};
        CHECK(std::abs(fft(*cfg.pulse.samples)[2]) < 1e-15);
        const auto a = gfdm_modulation_matrix(cfg);
        CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(to_eigen(a)).rank() == 3);
        CHECK(gfdm_condition_number(cfg) == std::numeric_limits<double>::infinity());
        CHECK_THROWS_AS(gfdm_demodulate(ComplexVector(4), cfg, GfdmReceiver::ZeroForcing), SingularMatrixError);
    }
}
