#pragma once

// Dense complex linear algebra used by the modulators, receivers and tests.
// Everything here is a pure function of its arguments.

#include <cstdint>
#include <vector>

#include "mcwave/types.hpp"

namespace mcw {

/// exp(-2*pi*i*r/n) for integer r, reduced mod n before evaluation so large
/// products j*k do not lose accuracy in the argument.
cplx unit_root(std::int64_t r, std::size_t n);

ComplexMatrix identity(std::size_t n);

/// Unitary n-point DFT matrix, entry (j,k) = exp(-2*pi*i*j*k/n)/sqrt(n).
ComplexMatrix dft_matrix(std::size_t n);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector multiply(const ComplexMatrix& a, const ComplexVector& x);

ComplexMatrix kronecker(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column stacking.
ComplexVector vec(const ComplexMatrix& m);

/// Column-major fill: entry (r,c) = v[c*rows + r]. Inverse of vec().
ComplexMatrix reshape_cols(const ComplexVector& v, std::size_t rows, std::size_t cols);

/// Rotate forward by `shift`: out[(n + shift) mod N] = v[n]. Negative shifts
/// rotate backward.
ComplexVector circular_shift(const ComplexVector& v, std::int64_t shift);

/// Whole-vector tiling: out[n] = v[n mod v.size()], length times * v.size().
ComplexVector repeat_periodic(const ComplexVector& v, std::size_t times);

ComplexMatrix diag_embed(const ComplexVector& v);

/// Elementwise product.
ComplexVector hadamard(const ComplexVector& a, const ComplexVector& b);

double norm2(const ComplexVector& v);
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU factorization with partial pivoting, P*A = L*U. A pivot with magnitude
/// below 1e-12 * max|A| is treated as singular.
class LuDecomposition {
  public:
    explicit LuDecomposition(const ComplexMatrix& a);

    std::size_t size() const noexcept { return n_; }

    ComplexVector solve(const ComplexVector& b) const;
    ComplexMatrix inverse() const;

  private:
    void solve_in_place(std::span<cplx> x) const;

    std::size_t n_;
    std::vector<cplx> lu_;  // row-major, unit-lower L below the diagonal
    std::vector<std::size_t> perm_;
};

ComplexVector solve(const ComplexMatrix& a, const ComplexVector& b);
ComplexMatrix invert(const ComplexMatrix& a);

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& a);

/// sigma_max / sigma_min, or +inf when sigma_min <= 1e-13 * sigma_max.
double condition_number(const ComplexMatrix& a);

}  // namespace mcw
