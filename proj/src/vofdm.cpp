#include "mcwave/vofdm.hpp"

#include <vector>

#include "mcwave/fft.hpp"
#include "mcwave/linalg.hpp"

namespace mcw {

void VofdmConfig::validate() const {
    if (M < 1 || L < 1) throw ParameterError("VOFDM: M and L must be >= 1");
}

void VofdmFrame::validate() const {
    config.validate();
    if (data.size() != config.N())
        throw DimensionError("VOFDM: frame has " + std::to_string(data.size()) + " symbols, expected N = " +
                             std::to_string(config.N()));
    if (!data.all_finite()) throw ParameterError("VOFDM: frame contains non-finite symbols");
}

ComplexMatrix vofdm_modulation_matrix(const VofdmConfig& cfg) {
    cfg.validate();
    return kronecker(adjoint(dft_matrix(cfg.L)), identity(cfg.M));
}

namespace {

// Row r of the column-major M x L view of `v` is the stride-M sequence
// v[r], v[r+M], ...; transform each row in place.
ComplexVector transform_rows(const ComplexVector& v, const VofdmConfig& cfg, bool inverse) {
    const FftPlan plan(cfg.L);
    ComplexVector out(v.size());
    std::vector<cplx> row(cfg.L);
    for (std::size_t r = 0; r < cfg.M; ++r) {
        for (std::size_t c = 0; c < cfg.L; ++c) row[c] = v[c * cfg.M + r];
        if (inverse)
            plan.inverse(row);
        else
            plan.forward(row);
        for (std::size_t c = 0; c < cfg.L; ++c) out[c * cfg.M + r] = row[c];
    }
    return out;
}

}  // namespace

ComplexVector vofdm_modulate(const VofdmFrame& frame) {
    frame.validate();
    return transform_rows(frame.data, frame.config, true);
}

ComplexVector vofdm_demodulate(const ComplexVector& x, const VofdmConfig& cfg) {
    cfg.validate();
    if (x.size() != cfg.N())
        throw DimensionError("VOFDM: received " + std::to_string(x.size()) + " samples, expected N = " +
                             std::to_string(cfg.N()));
    return transform_rows(x, cfg, false);
}

}  // namespace mcw
