#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace tc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix Matrix::multiply(const Matrix& other) const {
    if (cols_ != other.rows()) {
        throw Error::usage("LengthMismatch", "matrix product dimension mismatch");
    }
    Matrix out(rows_, other.cols());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(r, k);
            if (a == 0.0) {
                continue;
            }
            for (std::size_t c = 0; c < other.cols(); ++c) {
                out(r, c) += a * other(k, c);
            }
        }
    }
    return out;
}

namespace {

// Reduces [a | rhs] in place with partial pivoting; rhs has `width` columns
// stored in a row-major strip.
void eliminate(Matrix& a, std::vector<double>& rhs, std::size_t width) {
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::fabs(a(pivot, col)) < 1e-300) {
            throw Error::numeric("SingularMatrix", "pivot vanished during elimination");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
            }
            for (std::size_t c = 0; c < width; ++c) {
                std::swap(rhs[col * width + c], rhs[pivot * width + c]);
            }
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const double factor = a(r, col) * inv;
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                a(r, c) -= factor * a(col, c);
            }
            for (std::size_t c = 0; c < width; ++c) {
                rhs[r * width + c] -= factor * rhs[col * width + c];
            }
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        const double inv = 1.0 / a(r, r);
        for (std::size_t c = 0; c < width; ++c) {
            rhs[r * width + c] *= inv;
        }
    }
}

}  // namespace

std::vector<double> solve(Matrix a, std::vector<double> b) {
    if (a.rows() != a.cols() || a.rows() != b.size()) {
        throw Error::usage("LengthMismatch", "solve requires square A and matching b");
    }
    eliminate(a, b, 1);
    return b;
}

Matrix invert(Matrix a) {
    if (a.rows() != a.cols()) {
        throw Error::usage("LengthMismatch", "invert requires a square matrix");
    }
    const std::size_t n = a.rows();
    std::vector<double> rhs(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i * n + i] = 1.0;
    }
    eliminate(a, rhs, n);
    Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv(r, c) = rhs[r * n + c];
        }
    }
    return inv;
}

OlsFit ols(const Matrix& x, const std::vector<double>& y) {
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    if (n != y.size()) {
        throw Error::usage("LengthMismatch", "design rows must match response length");
    }
    if (n <= k) {
        throw Error::data("TooFewObservations",
                          "need more observations than regressors (" + std::to_string(n) + " <= " +
                              std::to_string(k) + ")");
    }

    Matrix xtx(k, k);
    std::vector<double> xty(k, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < k; ++i) {
            const double xi = x(r, i);
            xty[i] += xi * y[r];
            for (std::size_t j = i; j < k; ++j) {
                xtx(i, j) += xi * x(r, j);
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            xtx(i, j) = xtx(j, i);
        }
    }

    const Matrix xtx_inv = invert(xtx);
    OlsFit fit;
    fit.n_obs = n;
    fit.n_params = k;
    fit.coefficients.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            fit.coefficients[i] += xtx_inv(i, j) * xty[j];
        }
    }

    fit.residuals.assign(n, 0.0);
    double rss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double fitted = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            fitted += x(r, i) * fit.coefficients[i];
        }
        fit.residuals[r] = y[r] - fitted;
        rss += fit.residuals[r] * fit.residuals[r];
    }
    fit.sigma2 = rss / static_cast<double>(n - k);
    fit.standard_errors.assign(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        fit.standard_errors[i] = std::sqrt(std::max(0.0, fit.sigma2 * xtx_inv(i, i)));
    }
    return fit;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                sum += a(r, c) * a(r, c);
            }
        }
    }
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            sum += a(r, c) * a(r, c);
        }
    }
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition jacobi_eigen(Matrix c) {
    if (c.rows() != c.cols()) {
        throw Error::usage("LengthMismatch", "eigendecomposition requires a square matrix");
    }
    const std::size_t n = c.rows();
    Matrix v = Matrix::identity(n);
    const double tolerance = 1e-12 * frobenius_norm(c);

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(c) > tolerance) {
        if (++sweep > kMaxSweeps) {
            throw Error::numeric("EigenDidNotConverge",
                                 "Jacobi rotations did not reach tolerance");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = c(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (c(q, q) - c(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double co = 1.0 / std::sqrt(t * t + 1.0);
                const double si = t * co;
                for (std::size_t i = 0; i < n; ++i) {
                    const double cip = c(i, p);
                    const double ciq = c(i, q);
                    c(i, p) = co * cip - si * ciq;
                    c(i, q) = si * cip + co * ciq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double cpi = c(p, i);
                    const double cqi = c(q, i);
                    c(p, i) = co * cpi - si * cqi;
                    c(q, i) = si * cpi + co * cqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = co * vip - si * viq;
                    v(i, q) = si * vip + co * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&c](std::size_t a, std::size_t b) { return c(a, a) > c(b, b); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = c(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, j) = v(i, order[j]);
        }
    }
    return out;
}

}  // namespace tc
