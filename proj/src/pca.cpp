#include "pca.hpp"

#include <cmath>
#include <cstddef>

#include "errors.hpp"
#include "json.hpp"

namespace tc {

PcaModel fit_pca(const std::vector<std::vector<double>>& data) {
    const std::size_t l = data.size();
    if (l < 2 || data.front().empty()) {
        throw Error::data("EmptyData", "need at least two rows and one column");
    }
    const std::size_t n = data.front().size();
    for (const std::vector<double>& row : data) {
        if (row.size() != n) {
            throw Error::data("EmptyData", "rows must all have the same length");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw Error::data("NonFiniteInput", "data contains a non-finite value");
            }
        }
    }

    PcaModel model;
    model.n_features = n;
    model.n_samples = l;
    model.mean_vector.assign(n, 0.0);
    for (const std::vector<double>& row : data) {
        for (std::size_t j = 0; j < n; ++j) { model.mean_vector[j] += row[j]; }
    }
    for (double& m : model.mean_vector) { m /= static_cast<double>(l); }

    Matrix cov(n, n);
    for (const std::vector<double>& row : data) {
        for (std::size_t i = 0; i < n; ++i) {
            const double ci = row[i] - model.mean_vector[i];
            for (std::size_t j = i; j < n; ++j) {
                cov(i, j) += ci * (row[j] - model.mean_vector[j]);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cov(i, j) /= static_cast<double>(l - 1);
            cov(j, i) = cov(i, j);
        }
    }

    EigenDecomposition eig = jacobi_eigen(std::move(cov));
    model.eigenvalues = std::move(eig.eigenvalues);
    model.components = std::move(eig.eigenvectors);
    for (double& ev : model.eigenvalues) {
        if (ev < 0.0) { ev = 0.0; }  // round-off on rank-deficient data
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t arg = 0;
        for (std::size_t r = 1; r < n; ++r) {
            if (std::abs(model.components(r, c)) > std::abs(model.components(arg, c))) { arg = r; }
        }
        if (model.components(arg, c) < 0.0) {
            for (std::size_t r = 0; r < n; ++r) { model.components(r, c) = -model.components(r, c); }
        }
    }
    return model;
}

std::vector<double> transform(const PcaModel& model, std::span<const double> x, std::size_t k) {
    if (x.size() != model.n_features) {
        throw Error::usage("DimensionMismatch", "input length must equal the feature count");
    }
    if (k < 1 || k > model.n_features) {
        throw Error::usage("BadK", "component count must be between 1 and the feature count");
    }
    std::vector<double> y(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < model.n_features; ++r) {
            sum += model.components(r, c) * (x[r] - model.mean_vector[r]);
        }
        y[c] = sum;
    }
    return y;
}

std::vector<double> inverse_transform(const PcaModel& model, std::span<const double> y) {
    const std::size_t k = y.size();
    if (k < 1 || k > model.n_features) {
        throw Error::usage("DimensionMismatch",
                           "component vector length must be between 1 and the feature count");
    }
    std::vector<double> x(model.mean_vector);
    for (std::size_t r = 0; r < model.n_features; ++r) {
        for (std::size_t c = 0; c < k; ++c) { x[r] += model.components(r, c) * y[c]; }
    }
    return x;
}

std::vector<double> explained_variance(const PcaModel& model) {
    double total = 0.0;
    for (double ev : model.eigenvalues) { total += ev; }
    if (!(total > 0.0)) {
        throw Error::data("ZeroVariance", "total variance is zero; fractions are undefined");
    }
    std::vector<double> out(model.eigenvalues.size());
    for (std::size_t i = 0; i < out.size(); ++i) { out[i] = model.eigenvalues[i] / total; }
    return out;
}

std::string pca_to_json(const PcaModel& model) {
    nlohmann::json j;
    j["format"] = "pca-model";
    j["version"] = 1;
    j["n_features"] = model.n_features;
    j["n_samples"] = model.n_samples;
    j["mean"] = model.mean_vector;
    j["eigenvalues"] = model.eigenvalues;
    std::vector<double> flat;
    flat.reserve(model.n_features * model.n_features);
    for (std::size_t r = 0; r < model.n_features; ++r) {
        for (std::size_t c = 0; c < model.n_features; ++c) { flat.push_back(model.components(r, c)); }
    }
    j["components"] = flat;  // row-major
    return j.dump(2);
}

PcaModel pca_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error::data("BadModelJson", std::string("cannot parse model JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "pca-model" || j.at("version").get<int>() != 1) {
            throw Error::data("BadModelJson", "unknown model format or version");
        }
        PcaModel model;
        model.n_features = j.at("n_features").get<std::size_t>();
        model.n_samples = j.at("n_samples").get<std::size_t>();
        model.mean_vector = j.at("mean").get<std::vector<double>>();
        model.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
        const auto flat = j.at("components").get<std::vector<double>>();
        const std::size_t n = model.n_features;
        if (model.mean_vector.size() != n || model.eigenvalues.size() != n ||
            flat.size() != n * n) {
            throw Error::data("BadModelJson", "field sizes do not match n_features");
        }
        model.components = Matrix(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) { model.components(r, c) = flat[r * n + c]; }
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw Error::data("BadModelJson", std::string("model JSON missing fields: ") + e.what());
    }
}

}  // namespace tc
