#include "mcwave/linalg.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace mcw {

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    if (rows_ == 0 || cols_ == 0) throw DimensionError("ComplexMatrix: dimensions must be >= 1");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ComplexMatrix: ragged row literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

cplx unit_root(std::int64_t r, std::size_t n) {
    const auto nn = static_cast<std::int64_t>(n);
    r %= nn;
    if (r < 0) r += nn;
    // Exact values on the axes keep DFT/IDFT matrices free of 1e-16 residue.
    if (r == 0) return {1.0, 0.0};
    if (2 * r == nn) return {-1.0, 0.0};
    if (4 * r == nn) return {0.0, -1.0};
    if (4 * r == 3 * nn) return {0.0, 1.0};
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix dft_matrix(std::size_t n) {
    if (n == 0) throw DimensionError("dft_matrix: n must be >= 1");
    ComplexMatrix out(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            out(j, k) = unit_root(static_cast<std::int64_t>(j * k), n) * scale;
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("multiply: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto out_row = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            const auto b_row = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j) out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

ComplexVector multiply(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.cols() != x.size()) throw DimensionError("multiply: matrix columns != vector length");
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc{};
        const auto row = a.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) acc += row[k] * x[k];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
        }
    return out;
}

ComplexVector vec(const ComplexMatrix& m) {
    ComplexVector out(m.rows() * m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r) out[c * m.rows() + r] = m(r, c);
    return out;
}

ComplexMatrix reshape_cols(const ComplexVector& v, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || v.size() != rows * cols)
        throw DimensionError("reshape_cols: vector length " + std::to_string(v.size()) + " != " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    ComplexMatrix out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) out(r, c) = v[c * rows + r];
    return out;
}

ComplexVector circular_shift(const ComplexVector& v, std::int64_t shift) {
    const auto n = static_cast<std::int64_t>(v.size());
    std::int64_t s = shift % n;
    if (s < 0) s += n;
    ComplexVector out(v.size());
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>((i + s) % n)] = v[static_cast<std::size_t>(i)];
    return out;
}

ComplexVector repeat_periodic(const ComplexVector& v, std::size_t times) {
    if (times == 0) throw ParameterError("repeat_periodic: repetition count must be >= 1");
    ComplexVector out(v.size() * times);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i % v.size()];
    return out;
}

ComplexMatrix diag_embed(const ComplexVector& v) {
    ComplexMatrix out(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out(i, i) = v[i];
    return out;
}

ComplexVector hadamard(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw DimensionError("hadamard: length mismatch");
    ComplexVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

double norm2(const ComplexVector& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& z : m.values()) best = std::max(best, std::abs(z));
    return best;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) throw DimensionError("max_abs_diff: length mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::abs(a[i] - b[i]));
    return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        best = std::max(best, std::abs(a.values()[i] - b.values()[i]));
    return best;
}

LuDecomposition::LuDecomposition(const ComplexMatrix& a)
    : n_(a.rows()), lu_(a.values()), perm_(a.rows()) {
    if (!a.is_square()) throw DimensionError("LU: matrix must be square");
    const double scale = max_abs(a);
    const double threshold = 1e-12 * scale;
    for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
    if (scale == 0.0)
        throw SingularMatrixError("LU: zero matrix", std::numeric_limits<double>::infinity());

    auto at = [&](std::size_t r, std::size_t c) -> cplx& { return lu_[r * n_ + c]; };
    for (std::size_t k = 0; k < n_; ++k) {
        std::size_t pivot = k;
        double best = std::abs(at(k, k));
        for (std::size_t r = k + 1; r < n_; ++r) {
            const double mag = std::abs(at(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best <= threshold) {
            const double indicator = best > 0.0 ? scale / best : std::numeric_limits<double>::infinity();
            throw SingularMatrixError("LU: pivot " + std::to_string(best) + " at column " + std::to_string(k) +
                                          " below 1e-12*max|a|; condition indicator " + std::to_string(indicator),
                                      indicator);
        }
        if (pivot != k) {
            std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                             lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_),
                             lu_.begin() + static_cast<std::ptrdiff_t>(pivot * n_));
            std::swap(perm_[k], perm_[pivot]);
        }
        const cplx inv_pivot = 1.0 / at(k, k);
        for (std::size_t r = k + 1; r < n_; ++r) {
            const cplx factor = at(r, k) * inv_pivot;
            at(r, k) = factor;
            if (factor == cplx{}) continue;
            for (std::size_t c = k + 1; c < n_; ++c) at(r, c) -= factor * at(k, c);
        }
    }
}

void LuDecomposition::solve_in_place(std::span<cplx> x) const {
    // Forward substitution with unit-lower L, then back substitution with U.
    for (std::size_t r = 0; r < n_; ++r) {
        cplx acc = x[r];
        for (std::size_t c = 0; c < r; ++c) acc -= lu_[r * n_ + c] * x[c];
        x[r] = acc;
    }
    for (std::size_t r = n_; r-- > 0;) {
        cplx acc = x[r];
        for (std::size_t c = r + 1; c < n_; ++c) acc -= lu_[r * n_ + c] * x[c];
        x[r] = acc / lu_[r * n_ + r];
    }
}

ComplexVector LuDecomposition::solve(const ComplexVector& b) const {
    if (b.size() != n_) throw DimensionError("LU solve: right-hand side length mismatch");
    ComplexVector x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
    solve_in_place(x.span());
    return x;
}

ComplexMatrix LuDecomposition::inverse() const {
    ComplexMatrix out(n_, n_);
    std::vector<cplx> column(n_);
    for (std::size_t c = 0; c < n_; ++c) {
        for (std::size_t i = 0; i < n_; ++i) column[i] = perm_[i] == c ? 1.0 : 0.0;
        solve_in_place(column);
        for (std::size_t r = 0; r < n_; ++r) out(r, c) = column[r];
    }
    return out;
}

ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b) {
    if (!a.is_square()) throw DimensionError("solve: matrix must be square");
    if (a.rows() != b.size()) throw DimensionError("solve: right-hand side length mismatch");
    return LuDecomposition(a).solve(b);
}

ComplexMatrix invert(const ComplexMatrix& a) { return LuDecomposition(a).inverse(); }

std::vector<double> singular_values(const ComplexMatrix& a) {
    // One-sided Jacobi on the columns of a working copy stored column-major.
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    std::vector<cplx> w(rows * cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t r = 0; r < rows; ++r) w[c * rows + r] = a(r, c);
    auto col = [&](std::size_t c) { return std::span<cplx>(w.data() + c * rows, rows); };

    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                auto cp = col(p);
                auto cq = col(q);
                double alpha = 0.0, beta = 0.0;
                cplx gamma{};
                for (std::size_t r = 0; r < rows; ++r) {
                    alpha += std::norm(cp[r]);
                    beta += std::norm(cq[r]);
                    gamma += std::conj(cp[r]) * cq[r];
                }
                const double g = std::abs(gamma);
                if (alpha == 0.0 || beta == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const cplx phase = std::conj(gamma) / g;  // makes <cp, cq*phase> real
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const cplx x = cp[r];
                    const cplx y = cq[r] * phase;
                    cp[r] = c * x - s * y;
                    cq[r] = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (const auto& z : col(c)) acc += std::norm(z);
        sv[c] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    if (rows < cols) sv.resize(rows);
    return sv;
}

double condition_number(const ComplexMatrix& a) {
    const auto sv = singular_values(a);
    const double hi = sv.front();
    const double lo = sv.back();
    if (hi == 0.0 || lo <= 1e-13 * hi) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

}  // namespace mcw
