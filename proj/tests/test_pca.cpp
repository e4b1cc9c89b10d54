#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "linalg.hpp"
#include "pca.hpp"
#include "rng.hpp"

namespace {

std::vector<std::vector<double>> random_matrix(tc::Rng& rng, std::size_t rows, std::size_t cols) {
    std::vector<std::vector<double>> data(rows, std::vector<double>(cols));
    for (auto& row : data) {
        for (double& v : row) {
            v = 3.0 * rng.normal();
        }
    }
    return data;
}

}  // namespace

TEST_CASE("perfectly collinear data explains everything on one component") {
    std::vector<std::vector<double>> line;
    for (int i = 0; i < 12; ++i) {
        const double t = static_cast<double>(i);
        line.push_back({t, 2.0 * t});
    }
    const tc::PcaModel model = tc::fit_pca(line);
    const std::vector<double> ratios = tc::explained_variance(model);
    REQUIRE(ratios.size() == 2);
    CHECK(ratios[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ratios[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("components are orthonormal, sorted and reproduce the covariance action") {
    tc::Rng rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t cols = 2 + rng.below(6);  // up to 8 features
        const std::size_t rows = cols + 2 + rng.below(10);
        const auto data = random_matrix(rng, rows, cols);
        const tc::PcaModel model = tc::fit_pca(data);

        // Orthonormality.
        for (std::size_t a = 0; a < cols; ++a) {
            for (std::size_t b = 0; b < cols; ++b) {
                double dot = 0.0;
                for (std::size_t r = 0; r < cols; ++r) {
                    dot += model.components(r, a) * model.components(r, b);
                }
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
            }
        }
        // Eigenvalues sorted descending and non-negative.
        for (std::size_t i = 1; i < cols; ++i) {
            CHECK(model.eigenvalues[i - 1] >= model.eigenvalues[i]);
        }
        CHECK(model.eigenvalues.back() >= 0.0);

        // Trace of the covariance equals the eigenvalue sum.
        std::vector<double> mean(cols, 0.0);
        for (const auto& row : data) {
            for (std::size_t c = 0; c < cols; ++c) {
                mean[c] += row[c];
            }
        }
        for (double& v : mean) {
            v /= static_cast<double>(rows);
        }
        double trace = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            double ss = 0.0;
            for (const auto& row : data) {
                ss += (row[c] - mean[c]) * (row[c] - mean[c]);
            }
            trace += ss / static_cast<double>(rows - 1);
        }
        double lambda_sum = 0.0;
        for (double v : model.eigenvalues) {
            lambda_sum += v;
        }
        CHECK(lambda_sum == doctest::Approx(trace).epsilon(1e-8));

        // Sign convention: the largest-magnitude entry of each column is
        // positive, which pins an otherwise arbitrary reflection.
        for (std::size_t c = 0; c < cols; ++c) {
            double best = 0.0;
            for (std::size_t r = 0; r < cols; ++r) {
                if (std::abs(model.components(r, c)) > std::abs(best)) {
                    best = model.components(r, c);
                }
            }
            CHECK(best > 0.0);
        }
    }
}

TEST_CASE("transform with all components inverts exactly") {
    tc::Rng rng(29);
    const auto data = random_matrix(rng, 20, 5);
    const tc::PcaModel model = tc::fit_pca(data);
    for (const auto& row : data) {
        const std::vector<double> projected = tc::transform(model, row, 5);
        const std::vector<double> back = tc::inverse_transform(model, projected);
        for (std::size_t c = 0; c < 5; ++c) {
            CHECK(back[c] == doctest::Approx(row[c]).epsilon(1e-8));
        }
    }
    const std::vector<double> two = tc::transform(model, data[0], 2);
    CHECK(two.size() == 2);
    CHECK_THROWS_AS(tc::transform(model, data[0], 0), tc::Error);
    CHECK_THROWS_AS(tc::transform(model, data[0], 6), tc::Error);
    CHECK_THROWS_AS(tc::transform(model, std::vector<double>{1.0}, 2), tc::Error);
}

TEST_CASE("pca guards: empty, ragged, non-finite, zero variance") {
    CHECK_THROWS_AS(tc::fit_pca({}), tc::Error);
    CHECK_THROWS_AS(tc::fit_pca({{1.0, 2.0}}), tc::Error);  // one sample
    CHECK_THROWS_AS(tc::fit_pca({{1.0, 2.0}, {1.0}}), tc::Error);
    CHECK_THROWS_AS(tc::fit_pca({{1.0, 2.0}, {std::nan(""), 1.0}}), tc::Error);

    const tc::PcaModel constant = tc::fit_pca({{4.0, 4.0}, {4.0, 4.0}, {4.0, 4.0}});
    CHECK_THROWS_AS(tc::explained_variance(constant), tc::Error);
}

TEST_CASE("model serialization round-trips the projection") {
    tc::Rng rng(31);
    const auto data = random_matrix(rng, 15, 4);
    const tc::PcaModel model = tc::fit_pca(data);
    const tc::PcaModel restored = tc::pca_from_json(tc::pca_to_json(model));
    CHECK(restored.n_features == model.n_features);
    CHECK(restored.eigenvalues == model.eigenvalues);
    CHECK(tc::transform(restored, data[3], 4) == tc::transform(model, data[3], 4));
    CHECK_THROWS_AS(tc::pca_from_json("{}"), tc::Error);
}
