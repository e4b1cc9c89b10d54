#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "series.hpp"

namespace tc {

/// Non-seasonal (p,d,q) plus seasonal (P,D,Q) at period m. m = 0 means no
/// seasonal part; m >= 2 is required when any of P, D, Q is positive.
struct ModelOrder {
    int p = 0;
    int d = 0;
    int q = 0;
    int P = 0;
    int D = 0;
    int Q = 0;
    int m = 0;
    bool include_constant = true;

    void validate() const;

    /// p + q + P + Q + constant + sigma2; the count used by the
    /// information criteria.
    int n_params() const;

    /// Fitting requires strictly more observations than this.
    std::size_t min_series_length() const;
};

struct ArimaCoefficients {
    std::vector<double> ar;
    std::vector<double> ma;
    std::vector<double> seasonal_ar;
    std::vector<double> seasonal_ma;
    double constant = 0.0;
};

struct ArimaFit {
    ModelOrder order;
    ArimaCoefficients coeffs;
    double sigma2 = 0.0;
    double log_likelihood = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
    std::vector<double> residuals;  // one-step innovations, length n_effective
    std::size_t n_effective = 0;
    /// Standard errors in packing order ar, ma, seasonal_ar, seasonal_ma,
    /// constant; NaN when the Hessian is unusable.
    std::vector<double> coeff_std_errors;
};

struct ForecastResult {
    int horizon = 0;
    std::vector<double> mean;
    std::vector<double> lower_95;
    std::vector<double> upper_95;
    std::vector<std::int64_t> future_timestamps;  // epoch seconds
    std::vector<double> psi_weights;              // psi_0..psi_{horizon-1}
};

struct InformationCriteria {
    double aic = 0.0;
    double bic = 0.0;
    double hqic = 0.0;
};

/// True when 1 - sum phi_i z^i has all roots strictly outside the unit
/// circle (Schur-Cohn reflection-coefficient test, no eigensolver).
bool ar_polynomial_stationary(std::span<const double> phi);

/// True when 1 + sum theta_i z^i has all roots strictly outside the unit
/// circle.
bool ma_polynomial_invertible(std::span<const double> theta);

/// Conditional-sum-of-squares estimation. Differences the series (ordinary
/// d, then seasonal D at lag m), expands the multiplicative seasonal
/// polynomials, and minimizes sum e_t^2 over the one-step innovation
/// recursion with zero pre-sample innovations. Optimization is Nelder-Mead
/// from Yule-Walker AR initials (zero MA, mean-implied constant) with a
/// restart from zeros; non-stationary or non-invertible candidates score a
/// flat 1e10. sigma2 = CSS/n_effective and the Gaussian log-likelihood is
/// -(n_effective/2)(ln(2 pi sigma2) + 1). Standard errors come from a
/// central finite-difference Hessian of the CSS objective. Error kinds:
/// SeriesTooShort, OptimizerDidNotConverge, DegenerateVariance.
ArimaFit fit(const TimeSeries& series, const ModelOrder& order);

/// Multi-step mean forecasts by iterating the full generalized AR
/// recursion (AR and seasonal AR polynomials times the differencing
/// operators) on the original scale; 95% intervals use the psi-weight
/// cumulative variance sigma2 * sum psi_j^2. Error kind: BadHorizon.
ForecastResult forecast(const ArimaFit& fit, const TimeSeries& series, int horizon);

/// Draws a seeded Gaussian ARMA path on the differenced scale (100-sample
/// burn-in discarded), then integrates seasonally and ordinarily with zero
/// initial values. Error kinds: NonStationaryCoefficients, BadLength.
TimeSeries simulate(const ModelOrder& order, const ArimaCoefficients& coeffs, std::size_t n,
                    std::uint64_t seed, double sigma);

/// Splits the series into k_parts contiguous parts (equal floor lengths,
/// remainder on the last), fits each independently, and averages the
/// coefficient vectors and sigma2 arithmetically. The log-likelihood and
/// information criteria are recomputed by running the innovation recursion
/// over the full series with the averaged coefficients. Error kinds:
/// BadPartitionCount, PartTooShort, plus per-part fit errors.
ArimaFit fit_partitioned(const TimeSeries& series, const ModelOrder& order, int k_parts);

/// AIC = -2 logL + 2k, BIC swaps 2k for k ln(n_eff), HQIC for
/// 2k ln(ln(n_eff)).
InformationCriteria information_criteria(double log_likelihood, int n_params,
                                         std::size_t n_effective);

/// MA(inf) weights by long division of the expanded MA polynomial by the
/// generalized AR polynomial; psi_0 = 1.
std::vector<double> psi_weights(const ModelOrder& order, const ArimaCoefficients& coeffs,
                                int count);

}  // namespace tc
