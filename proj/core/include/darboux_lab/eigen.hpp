#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "darboux_lab/error.hpp"
#include "darboux_lab/grid.hpp"

namespace dlab {

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Thrown when shifted QR stalls; carries the eigenvalues that did deflate.
class EigenConvergenceError : public NumericalError {
public:
    EigenConvergenceError(const std::string& what, std::vector<cplx> partial)
        : NumericalError(what), partial_(std::move(partial)) {}
    const std::vector<cplx>& partial() const { return partial_; }

private:
    std::vector<cplx> partial_;
};

/// All eigenvalues of a general complex matrix: Householder reduction to
/// Hessenberg form, then single-shift QR with Wilkinson shifts. At most 30 n
/// iterations in total.
std::vector<cplx> eig_complex_dense(ComplexMatrix a);

/// Tridiagonal matrix with diagonal d, subdiagonal lower[i] = A(i+1, i) and
/// superdiagonal upper[i] = A(i, i+1).
struct Tridiagonal {
    std::vector<cplx> diag;
    std::vector<cplx> lower;
    std::vector<cplx> upper;

    std::size_t size() const { return diag.size(); }
    ComplexMatrix dense() const;
};

/// Eigenvalues of a complex symmetric tridiagonal matrix (upper = lower) by
/// implicit QL with complex orthogonal rotations. Throws NumericalError on
/// breakdown (a rotation with vanishing norm) or non-convergence.
std::vector<cplx> eig_symmetric_tridiagonal(const Tridiagonal& t);

/// Improves an eigenvalue estimate by inverse iteration on (T - mu) with the
/// bilinear Rayleigh quotient x^T T x / x^T x. Returns the refined value and
/// writes the final residual ||T x - mu x|| / ||x|| if requested.
cplx refine_eigenvalue(const Tridiagonal& t, cplx mu, double* residual = nullptr, int max_iter = 8);

/// Infinity norm of a tridiagonal matrix.
double norm_inf(const Tridiagonal& t);

}  // namespace dlab
