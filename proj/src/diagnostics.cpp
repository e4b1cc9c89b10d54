#include "diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "dist.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace tc {

namespace {

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

// Central moment of the given order with population (1/n) weighting.
double central_moment(std::span<const double> values, double mean, int order) {
    double sum = 0.0;
    for (double v : values) {
        sum += std::pow(v - mean, order);
    }
    return sum / static_cast<double>(values.size());
}

}  // namespace

std::vector<double> acf(std::span<const double> values, int max_lag) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw Error::data("SeriesTooShort", "acf needs at least 2 observations");
    }
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n) {
        throw Error::usage("LagTooLarge", "max_lag must lie in [0, n-1]");
    }
    const double mean = mean_of(values);
    double denom = 0.0;
    for (double v : values) {
        denom += (v - mean) * (v - mean);
    }
    if (denom == 0.0) {
        throw Error::data("ConstantSeries", "acf undefined for a constant series");
    }
    std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
    r[0] = 1.0;
    for (int h = 1; h <= max_lag; ++h) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(h) < n; ++t) {
            num += (values[t] - mean) * (values[t + static_cast<std::size_t>(h)] - mean);
        }
        r[static_cast<std::size_t>(h)] = num / denom;
    }
    return r;
}

std::vector<double> pacf(std::span<const double> values, int max_lag) {
    const std::vector<double> r = acf(values, max_lag);
    std::vector<double> out(r.size(), 0.0);
    out[0] = 1.0;
    if (max_lag == 0) {
        return out;
    }
    // Durbin-Levinson: phi[k][k] is the lag-k partial autocorrelation.
    std::vector<double> phi_prev{r[1]};
    out[1] = r[1];
    for (int k = 2; k <= max_lag; ++k) {
        double num = r[static_cast<std::size_t>(k)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= phi_prev[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(k - j)];
            den -= phi_prev[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(j)];
        }
        if (std::fabs(den) < 1e-300) {
            throw Error::numeric("PacfUnstable", "Durbin-Levinson denominator vanished at lag " +
                                                     std::to_string(k));
        }
        const double phi_kk = num / den;
        std::vector<double> phi(static_cast<std::size_t>(k), 0.0);
        for (int j = 1; j < k; ++j) {
            phi[static_cast<std::size_t>(j - 1)] =
                phi_prev[static_cast<std::size_t>(j - 1)] -
                phi_kk * phi_prev[static_cast<std::size_t>(k - 1 - j)];
        }
        phi[static_cast<std::size_t>(k - 1)] = phi_kk;
        out[static_cast<std::size_t>(k)] = phi_kk;
        phi_prev = std::move(phi);
    }
    return out;
}

Correlogram correlogram(std::span<const double> values, int max_lag) {
    Correlogram gram;
    gram.acf = acf(values, max_lag);
    gram.pacf = pacf(values, max_lag);
    gram.lags.resize(static_cast<std::size_t>(max_lag) + 1);
    std::iota(gram.lags.begin(), gram.lags.end(), 0);
    gram.confidence_band = 1.96 / std::sqrt(static_cast<double>(values.size()));
    return gram;
}

namespace {

// Finite-sample Dickey-Fuller critical values, rows by tail probability,
// columns by regression sample size (last column is the asymptotic value).
constexpr std::array<double, 4> kAdfLevels = {0.01, 0.025, 0.05, 0.10};
constexpr std::array<double, 6> kAdfSampleSizes = {25, 50, 100, 250, 500, 1e18};

constexpr double kAdfConstant[4][6] = {
    {-3.75, -3.58, -3.51, -3.46, -3.44, -3.43},
    {-3.33, -3.22, -3.17, -3.14, -3.13, -3.12},
    {-3.00, -2.93, -2.89, -2.88, -2.87, -2.86},
    {-2.63, -2.60, -2.58, -2.57, -2.57, -2.57},
};

constexpr double kAdfConstantTrend[4][6] = {
    {-4.38, -4.15, -4.04, -3.99, -3.98, -3.96},
    {-3.95, -3.80, -3.73, -3.69, -3.68, -3.66},
    {-3.60, -3.50, -3.45, -3.43, -3.42, -3.41},
    {-3.24, -3.18, -3.15, -3.13, -3.13, -3.12},
};

// Interpolates one tail level's critical value linearly in 1/n.
double adf_critical_value(const double row[6], int n_obs) {
    const double n = static_cast<double>(std::max(n_obs, 25));
    const double inv_n = 1.0 / n;
    for (std::size_t i = 0; i + 1 < kAdfSampleSizes.size(); ++i) {
        const double lo = 1.0 / kAdfSampleSizes[i + 1];
        const double hi = 1.0 / kAdfSampleSizes[i];
        if (inv_n >= lo) {
            const double w = (inv_n - lo) / (hi - lo);
            return row[i + 1] + w * (row[i] - row[i + 1]);
        }
    }
    return row[5];
}

// Monotone piecewise-linear map from statistic to tail probability across
// the four tabulated levels, linearly extrapolated on the end segments.
double adf_p_value(double statistic, const std::array<double, 4>& critical_values) {
    constexpr double kFloor = 0.001;
    constexpr double kCeiling = 0.999;
    const auto& cv = critical_values;
    if (statistic <= cv[0]) {
        const double slope = (kAdfLevels[1] - kAdfLevels[0]) / (cv[1] - cv[0]);
        return std::max(kFloor, kAdfLevels[0] + slope * (statistic - cv[0]));
    }
    if (statistic >= cv[3]) {
        const double slope = (kAdfLevels[3] - kAdfLevels[2]) / (cv[3] - cv[2]);
        return std::min(kCeiling, kAdfLevels[3] + slope * (statistic - cv[3]));
    }
    for (std::size_t i = 0; i + 1 < cv.size(); ++i) {
        if (statistic <= cv[i + 1]) {
            const double w = (statistic - cv[i]) / (cv[i + 1] - cv[i]);
            return kAdfLevels[i] + w * (kAdfLevels[i + 1] - kAdfLevels[i]);
        }
    }
    return kCeiling;
}

}  // namespace

AdfResult adf_test(std::span<const double> values, AdfRegression regression,
                   std::optional<int> max_lag) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw Error::data("SeriesTooShort", "adf_test needs at least 4 observations");
    }
    const double first = values.front();
    if (std::all_of(values.begin(), values.end(), [first](double v) { return v == first; })) {
        throw Error::data("ConstantSeries", "adf_test undefined for a constant series");
    }
    int k = max_lag.value_or(static_cast<int>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
    if (k < 0) {
        throw Error::usage("LagTooLarge", "max_lag must be non-negative");
    }
    const std::int64_t n_obs_signed = static_cast<std::int64_t>(n) - 1 - k;
    if (n_obs_signed < 20) {
        throw Error::data("SeriesTooShort",
                          "adf_test needs at least 20 usable observations after lag trimming, got " +
                              std::to_string(n_obs_signed));
    }
    const std::size_t n_obs = static_cast<std::size_t>(n_obs_signed);

    std::vector<double> dy(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dy[i] = values[i + 1] - values[i];
    }

    const bool with_trend = regression == AdfRegression::constant_trend;
    const std::size_t n_cols = 2 + (with_trend ? 1 : 0) + static_cast<std::size_t>(k);
    Matrix x(n_obs, n_cols);
    std::vector<double> y(n_obs);
    // Response rows start at time index k+1 of the original series.
    for (std::size_t row = 0; row < n_obs; ++row) {
        const std::size_t t = row + static_cast<std::size_t>(k) + 1;
        y[row] = dy[t - 1];
        std::size_t col = 0;
        x(row, col++) = 1.0;
        if (with_trend) {
            x(row, col++) = static_cast<double>(t);
        }
        x(row, col++) = values[t - 1];
        for (int i = 1; i <= k; ++i) {
            x(row, col++) = dy[t - 1 - static_cast<std::size_t>(i)];
        }
    }

    OlsFit fit;
    try {
        fit = ols(x, y);
    } catch (const Error& e) {
        if (e.kind() == "SingularMatrix") {
            throw Error::numeric("SingularRegression", "collinear ADF design matrix");
        }
        throw;
    }
    const std::size_t gamma_col = with_trend ? 2 : 1;
    if (fit.standard_errors[gamma_col] == 0.0) {
        throw Error::numeric("SingularRegression", "zero standard error on the level coefficient");
    }

    AdfResult result;
    result.statistic = fit.coefficients[gamma_col] / fit.standard_errors[gamma_col];
    result.lags_used = k;
    result.n_obs = static_cast<int>(n_obs);
    const auto& table = with_trend ? kAdfConstantTrend : kAdfConstant;
    std::array<double, 4> cv{};
    for (std::size_t i = 0; i < cv.size(); ++i) {
        cv[i] = adf_critical_value(table[i], result.n_obs);
    }
    result.critical_values["1%"] = cv[0];
    result.critical_values["5%"] = cv[2];
    result.critical_values["10%"] = cv[3];
    result.p_value = adf_p_value(result.statistic, cv);
    result.is_stationary = result.p_value < 0.05;
    return result;
}

TestStat ljung_box(std::span<const double> residuals, int lags) {
    if (lags < 1) {
        throw Error::usage("NonPositiveLag", "ljung_box needs lags >= 1");
    }
    const std::size_t n = residuals.size();
    if (n <= static_cast<std::size_t>(lags)) {
        throw Error::data("SeriesTooShort", "ljung_box needs n > lags");
    }
    const std::vector<double> r = acf(residuals, lags);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        q += r[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(k)] /
             static_cast<double>(n - static_cast<std::size_t>(k));
    }
    q *= static_cast<double>(n) * (static_cast<double>(n) + 2.0);
    return TestStat{q, chi2_sf(q, static_cast<double>(lags))};
}

DescriptiveStats descriptive_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 4) {
        throw Error::data("SeriesTooShort", "descriptive_stats needs at least 4 observations");
    }
    DescriptiveStats stats;
    stats.mean = mean_of(values);
    const double m2 = central_moment(values, stats.mean, 2);
    if (m2 == 0.0) {
        throw Error::data("ZeroVariance", "descriptive_stats undefined for a constant series");
    }
    const double m3 = central_moment(values, stats.mean, 3);
    const double m4 = central_moment(values, stats.mean, 4);
    stats.std_dev = std::sqrt(m2 * static_cast<double>(n) / static_cast<double>(n - 1));
    stats.skew = m3 / std::pow(m2, 1.5);
    stats.kurtosis = m4 / (m2 * m2);
    const double jb = static_cast<double>(n) / 6.0 *
                      (stats.skew * stats.skew +
                       0.25 * (stats.kurtosis - 3.0) * (stats.kurtosis - 3.0));
    stats.jarque_bera = TestStat{jb, chi2_sf(jb, 2.0)};
    return stats;
}

TestStat heteroskedasticity_test(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 9) {
        throw Error::data("SeriesTooShort", "heteroskedasticity_test needs at least 9 residuals");
    }
    const std::size_t third = n / 3;
    double first_sum = 0.0;
    double last_sum = 0.0;
    for (std::size_t i = 0; i < third; ++i) {
        first_sum += residuals[i] * residuals[i];
        const double tail = residuals[n - third + i];
        last_sum += tail * tail;
    }
    if (first_sum == 0.0) {
        throw Error::data("ZeroDenominator", "first third of residuals is identically zero");
    }
    const double h = last_sum / first_sum;
    const double dof = static_cast<double>(third);
    const double p = std::min(1.0, 2.0 * std::min(f_cdf(h, dof, dof), f_sf(h, dof, dof)));
    return TestStat{h, p};
}

std::vector<double> standardize_residuals(std::span<const double> residuals) {
    const std::size_t n = residuals.size();
    if (n < 2) {
        throw Error::data("SeriesTooShort", "standardize_residuals needs at least 2 values");
    }
    const double mean = mean_of(residuals);
    double ss = 0.0;
    for (double v : residuals) {
        ss += (v - mean) * (v - mean);
    }
    if (ss == 0.0) {
        throw Error::data("ZeroVariance", "cannot standardize a constant sequence");
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (residuals[i] - mean) / sd;
    }
    return out;
}

std::vector<std::pair<double, double>> qq_points(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw Error::data("SeriesTooShort", "qq_points needs at least 3 values");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> points(n);
    // Mirrored evaluation keeps the theoretical quantiles exactly
    // antisymmetric about zero.
    for (std::size_t i = 0; 2 * i < n; ++i) {
        const std::size_t j = n - 1 - i;
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double q = 2 * i + 1 == n ? 0.0 : inverse_normal_cdf(p);
        points[i] = {q, sorted[i]};
        points[j] = {-q, sorted[j]};
    }
    return points;
}

DiagnosticsReport residual_diagnostics(std::span<const double> residuals) {
    const DescriptiveStats stats = descriptive_stats(residuals);
    DiagnosticsReport report;
    report.kurtosis = stats.kurtosis;
    report.skew = stats.skew;
    report.jarque_bera = stats.jarque_bera;
    report.ljung_box_l1 = ljung_box(residuals, 1);
    report.heteroskedasticity = heteroskedasticity_test(residuals);
    report.standardized_residuals = standardize_residuals(residuals);
    report.qq_points = qq_points(report.standardized_residuals);
    return report;
}

}  // namespace tc
