#pragma once

#include <cstddef>
#include <vector>

namespace tc {

/// Small dense row-major matrix; sized for regression designs and
/// feature covariances, not for large-scale work.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Matrix transposed() const;
    Matrix multiply(const Matrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Error kind: SingularMatrix.
std::vector<double> solve(Matrix a, std::vector<double> b);

/// Gauss-Jordan inverse with partial pivoting. Error kind: SingularMatrix.
Matrix invert(Matrix a);

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::vector<double> residuals;
    double sigma2 = 0.0;  // RSS / (n - k)
    std::size_t n_obs = 0;
    std::size_t n_params = 0;
};

/// Ordinary least squares of y on the columns of x via normal equations;
/// standard errors from sigma2 * diag((X'X)^-1). Requires n > k.
OlsFit ols(const Matrix& x, const std::vector<double>& y);

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // column i pairs with eigenvalues[i]
};

/// Cyclic Jacobi rotations for a symmetric matrix, iterated until the
/// off-diagonal Frobenius norm falls below 1e-12 times the input norm.
EigenDecomposition jacobi_eigen(Matrix c);

}  // namespace tc
