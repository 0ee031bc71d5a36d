#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcw {

using cplx = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shapes or lengths that do not fit together.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A parameter outside its admissible range (rolloff, index, SNR list, ...).
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Raised by LU-based solvers when a pivot collapses. `condition_indicator`
/// is max|a| / |smallest pivot| at the point of failure (may be +inf).
class SingularMatrixError : public Error {
  public:
    SingularMatrixError(const std::string& what, double condition_indicator)
        : Error(what), condition_indicator_(condition_indicator) {}

    double condition_indicator() const noexcept { return condition_indicator_; }

  private:
    double condition_indicator_;
};

/// Dense complex vector. Never empty.
class ComplexVector {
  public:
    explicit ComplexVector(std::size_t n) : data_(n) { require_nonempty(); }
    ComplexVector(std::vector<cplx> data) : data_(std::move(data)) { require_nonempty(); }
    ComplexVector(std::initializer_list<cplx> data) : data_(data) { require_nonempty(); }

    std::size_t size() const noexcept { return data_.size(); }

    cplx& operator[](std::size_t i) noexcept { return data_[i]; }
    const cplx& operator[](std::size_t i) const noexcept { return data_[i]; }

    std::span<cplx> span() noexcept { return data_; }
    std::span<const cplx> span() const noexcept { return data_; }
    const std::vector<cplx>& values() const noexcept { return data_; }

    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    bool all_finite() const noexcept {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

  private:
    void require_nonempty() const {
        if (data_.empty()) throw DimensionError("ComplexVector: length must be >= 1");
    }

    std::vector<cplx> data_;
};

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be >= 1");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> row_major)
        : rows_(rows), cols_(cols), data_(std::move(row_major)) {
        if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be >= 1");
        if (data_.size() != rows * cols)
            throw DimensionError("ComplexMatrix: entry count does not match rows*cols");
    }

    /// Row-by-row literal, e.g. {{1, 2}, {3, 4}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    const std::vector<cplx>& values() const noexcept { return data_; }

    bool all_finite() const noexcept {
        for (const auto& z : data_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

}  // namespace mcw
