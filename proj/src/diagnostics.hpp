#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tc {

enum class AdfRegression { constant, constant_trend };

struct AdfResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags_used = 0;
    int n_obs = 0;
    std::map<std::string, double> critical_values;  // keys "1%", "5%", "10%"
    bool is_stationary = false;                     // p_value < 0.05
};

struct Correlogram {
    std::vector<int> lags;  // 0..max_lag
    std::vector<double> acf;
    std::vector<double> pacf;
    double confidence_band = 0.0;  // 1.96 / sqrt(n)
};

struct TestStat {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct DescriptiveStats {
    double mean = 0.0;
    double std_dev = 0.0;  // sample (n-1) standard deviation
    double skew = 0.0;     // m3 / m2^1.5, population moments
    double kurtosis = 0.0; // m4 / m2^2, non-excess (normal = 3)
    TestStat jarque_bera;
};

struct DiagnosticsReport {
    double kurtosis = 0.0;
    double skew = 0.0;
    TestStat jarque_bera;
    TestStat ljung_box_l1;
    TestStat heteroskedasticity;
    std::vector<double> standardized_residuals;
    std::vector<std::pair<double, double>> qq_points;  // (theoretical, sample)
};

/// Sample autocorrelations r_0..r_max_lag with
/// r_h = sum (x_t - xbar)(x_{t+h} - xbar) / sum (x_t - xbar)^2.
/// Error kinds: ConstantSeries, LagTooLarge.
std::vector<double> acf(std::span<const double> values, int max_lag);

/// Partial autocorrelations by the Durbin-Levinson recursion; index 0 is 1
/// by convention and index 1 equals acf lag 1.
std::vector<double> pacf(std::span<const double> values, int max_lag);

/// acf + pacf + the +/-1.96/sqrt(n) white-noise band.
Correlogram correlogram(std::span<const double> values, int max_lag);

/// Augmented Dickey-Fuller unit-root test. Fits
///   dy_t = alpha (+ beta t) + gamma y_{t-1} + sum delta_i dy_{t-i} + e_t
/// and reports gamma_hat / SE as the statistic. Default lag order is
/// floor(12 * (n/100)^(1/4)); p-values come from monotone interpolation
/// of embedded Dickey-Fuller critical-value tables, clamped to
/// [0.001, 0.999]. Error kinds: SeriesTooShort, ConstantSeries,
/// SingularRegression.
AdfResult adf_test(std::span<const double> values,
                   AdfRegression regression = AdfRegression::constant,
                   std::optional<int> max_lag = std::nullopt);

/// Q = n(n+2) sum_{k=1..lags} r_k^2/(n-k), chi-square(lags) p-value.
TestStat ljung_box(std::span<const double> residuals, int lags);

DescriptiveStats descriptive_stats(std::span<const double> values);

/// H = (squared-residual sum over the final third) / (first third),
/// thirds by floor(n/3) with the middle remainder excluded; two-sided
/// F(n/3, n/3) p-value. Error kinds: SeriesTooShort, ZeroDenominator.
TestStat heteroskedasticity_test(std::span<const double> residuals);

/// (e - mean) / sample sd; output has mean 0 and sd 1.
std::vector<double> standardize_residuals(std::span<const double> residuals);

/// Sorted sample values paired with normal plotting-position quantiles
/// Phi^-1((i - 0.5)/n); antisymmetric theoretical quantiles by mirrored
/// evaluation.
std::vector<std::pair<double, double>> qq_points(std::span<const double> values);

/// Bundle used by model summaries: moments + Jarque-Bera, Ljung-Box at
/// lag 1, heteroskedasticity ratio, standardized residuals and their Q-Q
/// pairs. Requires n >= 9.
DiagnosticsReport residual_diagnostics(std::span<const double> residuals);

}  // namespace tc
