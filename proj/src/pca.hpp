#pragma once

#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace tc {

/// Principal components of a centered data matrix. Columns of `components`
/// are unit eigenvectors of the sample covariance, paired with
/// `eigenvalues` in descending order; each column's largest-magnitude
/// entry is positive so the decomposition is deterministic.
struct PcaModel {
    std::vector<double> mean_vector;
    Matrix components;  // n_features x n_features, eigenvectors in columns
    std::vector<double> eigenvalues;
    std::size_t n_features = 0;
    std::size_t n_samples = 0;
};

/// Centers the columns, forms C = X'X/(l-1), and diagonalizes it with
/// cyclic Jacobi rotations. Error kinds: EmptyData (fewer than two rows or
/// zero columns, or ragged rows), NonFiniteInput.
PcaModel fit_pca(const std::vector<std::vector<double>>& data);

/// y = Q_k' (x - mean) for the leading k components. Error kinds:
/// DimensionMismatch, BadK.
std::vector<double> transform(const PcaModel& model, std::span<const double> x, std::size_t k);

/// x_hat = Q_k y + mean; the full-rank round trip is the identity. Error
/// kind: DimensionMismatch.
std::vector<double> inverse_transform(const PcaModel& model, std::span<const double> y);

/// Fractions eigenvalue_i / total variance. Error kind: ZeroVariance.
std::vector<double> explained_variance(const PcaModel& model);

/// JSON round trip (mean, eigenvalues, components row-major) with a
/// version header.
std::string pca_to_json(const PcaModel& model);
PcaModel pca_from_json(const std::string& text);

}  // namespace tc
