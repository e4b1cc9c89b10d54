#include "arima.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "neldermead.hpp"
#include "rng.hpp"

namespace tc {

namespace {

constexpr double kPenalty = 1e10;
constexpr double kTwoPi = 6.28318530717958647692;

// Recursion-form lag coefficients: z_t = c + sum ar[k-1] z_{t-k}
//                                        + e_t + sum ma[k-1] e_{t-k}.
struct ExpandedModel {
    std::vector<double> ar;
    std::vector<double> ma;
};

std::vector<double> poly_multiply(std::span<const double> a, std::span<const double> b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// (1 + sign*sum c_i B^i)(1 + sign*sum s_j B^{jm}), ascending coefficients.
std::vector<double> multiplicative_poly(std::span<const double> coeffs,
                                        std::span<const double> seasonal, int m, double sign) {
    std::vector<double> base(coeffs.size() + 1, 0.0);
    base[0] = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        base[i + 1] = sign * coeffs[i];
    }
    std::vector<double> seas(seasonal.size() * static_cast<std::size_t>(m) + 1, 0.0);
    seas[0] = 1.0;
    for (std::size_t j = 0; j < seasonal.size(); ++j) {
        seas[(j + 1) * static_cast<std::size_t>(m)] = sign * seasonal[j];
    }
    return poly_multiply(base, seas);
}

ExpandedModel expand(const ModelOrder& order, const ArimaCoefficients& coeffs) {
    const std::vector<double> v =
        multiplicative_poly(coeffs.ar, coeffs.seasonal_ar, order.m, -1.0);
    const std::vector<double> u =
        multiplicative_poly(coeffs.ma, coeffs.seasonal_ma, order.m, 1.0);
    ExpandedModel em;
    em.ar.assign(v.size() - 1, 0.0);
    for (std::size_t k = 1; k < v.size(); ++k) {
        em.ar[k - 1] = -v[k];
    }
    em.ma.assign(u.begin() + 1, u.end());
    return em;
}

// Schur-Cohn via reflection coefficients: z_t = sum a_k z_{t-k} defines a
// stationary recursion iff every down-dated reflection coefficient has
// modulus < 1.
bool recursion_coeffs_stable(std::vector<double> a) {
    while (!a.empty() && a.back() == 0.0) {
        a.pop_back();
    }
    while (!a.empty()) {
        const double r = a.back();
        if (!(std::fabs(r) < 1.0)) {
            return false;
        }
        const std::size_t k = a.size() - 1;
        std::vector<double> next(k);
        const double denom = 1.0 - r * r;
        for (std::size_t j = 0; j < k; ++j) {
            next[j] = (a[j] + r * a[k - 1 - j]) / denom;
        }
        a = std::move(next);
    }
    return true;
}

bool expanded_model_admissible(const ExpandedModel& em) {
    if (!recursion_coeffs_stable(em.ar)) {
        return false;
    }
    std::vector<double> ma_as_ar(em.ma.size());
    for (std::size_t i = 0; i < em.ma.size(); ++i) {
        ma_as_ar[i] = -em.ma[i];
    }
    return recursion_coeffs_stable(std::move(ma_as_ar));
}

// One-step innovations with zero pre-sample values; returns the conditional
// sum of squares over t = pa..nz-1 and fills `innovations` (length nz,
// zeros before pa) when given.
double conditional_sum_of_squares(std::span<const double> z, std::size_t pa,
                                  const ExpandedModel& em, double c,
                                  std::vector<double>* innovations) {
    const std::size_t nz = z.size();
    std::vector<double> e(nz, 0.0);
    double css = 0.0;
    for (std::size_t t = pa; t < nz; ++t) {
        double pred = c;
        for (std::size_t k = 1; k <= em.ar.size(); ++k) {
            pred += em.ar[k - 1] * z[t - k];
        }
        const std::size_t ma_reach = std::min(em.ma.size(), t);
        for (std::size_t k = 1; k <= ma_reach; ++k) {
            pred += em.ma[k - 1] * e[t - k];
        }
        e[t] = z[t] - pred;
        css += e[t] * e[t];
    }
    if (innovations != nullptr) {
        *innovations = std::move(e);
    }
    return css;
}

std::vector<double> apply_model_differencing(std::span<const double> values,
                                             const ModelOrder& order) {
    std::vector<double> z = difference(values, order.d);
    for (int j = 0; j < order.D; ++j) {
        z = difference_once(z, static_cast<std::size_t>(order.m));
    }
    return z;
}

std::vector<double> pack_coefficients(const ArimaCoefficients& c, bool include_constant) {
    std::vector<double> params;
    params.reserve(c.ar.size() + c.ma.size() + c.seasonal_ar.size() + c.seasonal_ma.size() + 1);
    params.insert(params.end(), c.ar.begin(), c.ar.end());
    params.insert(params.end(), c.ma.begin(), c.ma.end());
    params.insert(params.end(), c.seasonal_ar.begin(), c.seasonal_ar.end());
    params.insert(params.end(), c.seasonal_ma.begin(), c.seasonal_ma.end());
    if (include_constant) {
        params.push_back(c.constant);
    }
    return params;
}

ArimaCoefficients unpack_coefficients(std::span<const double> params, const ModelOrder& o) {
    ArimaCoefficients c;
    std::size_t i = 0;
    c.ar.assign(params.begin() + i, params.begin() + i + o.p);
    i += static_cast<std::size_t>(o.p);
    c.ma.assign(params.begin() + i, params.begin() + i + o.q);
    i += static_cast<std::size_t>(o.q);
    c.seasonal_ar.assign(params.begin() + i, params.begin() + i + o.P);
    i += static_cast<std::size_t>(o.P);
    c.seasonal_ma.assign(params.begin() + i, params.begin() + i + o.Q);
    i += static_cast<std::size_t>(o.Q);
    c.constant = o.include_constant ? params[i] : 0.0;
    return c;
}

// Yule-Walker AR(p) solve by Durbin-Levinson on the sample ACF; falls back
// to zeros for degenerate inputs.
std::vector<double> yule_walker_initials(std::span<const double> z, int p) {
    std::vector<double> phi(static_cast<std::size_t>(p), 0.0);
    if (p == 0 || z.size() < static_cast<std::size_t>(p) + 2) {
        return phi;
    }
    std::vector<double> r;
    try {
        r = acf(z, p);
    } catch (const Error&) {
        return phi;
    }
    std::vector<double> current{r[1]};
    for (int k = 2; k <= p; ++k) {
        double num = r[static_cast<std::size_t>(k)];
        double den = 1.0;
        for (int j = 1; j < k; ++j) {
            num -= current[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(k - j)];
            den -= current[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(j)];
        }
        if (std::fabs(den) < 1e-12) {
            return std::vector<double>(static_cast<std::size_t>(p), 0.0);
        }
        const double phi_kk = num / den;
        std::vector<double> next(static_cast<std::size_t>(k), 0.0);
        for (int j = 1; j < k; ++j) {
            next[static_cast<std::size_t>(j - 1)] =
                current[static_cast<std::size_t>(j - 1)] -
                phi_kk * current[static_cast<std::size_t>(k - 1 - j)];
        }
        next[static_cast<std::size_t>(k - 1)] = phi_kk;
        current = std::move(next);
    }
    if (!recursion_coeffs_stable(current)) {
        return std::vector<double>(static_cast<std::size_t>(p), 0.0);
    }
    return current;
}

// Central finite-difference Hessian of the CSS objective; covariance is
// 2*sigma2*H^-1 for the concentrated Gaussian likelihood.
std::vector<double> hessian_standard_errors(
    const std::function<double(std::span<const double>)>& objective,
    const std::vector<double>& x, double sigma2) {
    const std::size_t k = x.size();
    std::vector<double> se(k, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> h(k);
    for (std::size_t i = 0; i < k; ++i) {
        h[i] = 1e-4 * std::max(1.0, std::fabs(x[i]));
    }
    Matrix hess(k, k);
    const double f0 = objective(x);
    std::vector<double> point = x;
    for (std::size_t i = 0; i < k; ++i) {
        point[i] = x[i] + h[i];
        const double f_plus = objective(point);
        point[i] = x[i] - h[i];
        const double f_minus = objective(point);
        point[i] = x[i];
        hess(i, i) = (f_plus - 2.0 * f0 + f_minus) / (h[i] * h[i]);
        for (std::size_t j = i + 1; j < k; ++j) {
            point[i] = x[i] + h[i];
            point[j] = x[j] + h[j];
            const double fpp = objective(point);
            point[j] = x[j] - h[j];
            const double fpm = objective(point);
            point[i] = x[i] - h[i];
            const double fmm = objective(point);
            point[j] = x[j] + h[j];
            const double fmp = objective(point);
            point[i] = x[i];
            point[j] = x[j];
            hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
        }
    }
    try {
        const Matrix inv = invert(hess);
        for (std::size_t i = 0; i < k; ++i) {
            const double var = 2.0 * sigma2 * inv(i, i);
            se[i] = var > 0.0 && std::isfinite(var) ? std::sqrt(var)
                                                    : std::numeric_limits<double>::quiet_NaN();
        }
    } catch (const Error&) {
        // leave NaNs
    }
    return se;
}

// Generalized AR polynomial g(B) = v(B) (1-B)^d (1-B^m)^D, ascending
// coefficients with g[0] = 1.
std::vector<double> generalized_ar_poly(const ModelOrder& order, const ArimaCoefficients& c) {
    std::vector<double> g = multiplicative_poly(c.ar, c.seasonal_ar, order.m, -1.0);
    const std::vector<double> diff{1.0, -1.0};
    for (int i = 0; i < order.d; ++i) {
        g = poly_multiply(g, diff);
    }
    if (order.D > 0) {
        std::vector<double> seasonal_diff(static_cast<std::size_t>(order.m) + 1, 0.0);
        seasonal_diff[0] = 1.0;
        seasonal_diff.back() = -1.0;
        for (int i = 0; i < order.D; ++i) {
            g = poly_multiply(g, seasonal_diff);
        }
    }
    return g;
}

double clamped_log_likelihood_sigma2(double sigma2) {
    return std::max(sigma2, 1e-300);
}

}  // namespace

void ModelOrder::validate() const {
    if (p < 0 || d < 0 || q < 0 || P < 0 || D < 0 || Q < 0 || m < 0) {
        throw Error::usage("BadOrder", "model orders must be non-negative");
    }
    if (m == 0 && (P > 0 || D > 0 || Q > 0)) {
        throw Error::usage("BadOrder", "seasonal orders require a period m >= 2");
    }
    if (m == 1) {
        throw Error::usage("BadOrder", "seasonal period must be 0 or >= 2");
    }
}

int ModelOrder::n_params() const {
    return p + q + P + Q + (include_constant ? 1 : 0) + 1;
}

std::size_t ModelOrder::min_series_length() const {
    // Two requirements: enough points to survive differencing plus the lag
    // span, and at least ten effective observations per estimated parameter
    // so heavy orders on tiny samples fail fast instead of fitting garbage.
    const int lag_guard = d + m * D + std::max(p, q) + m * std::max(P, Q) + 10;
    const int per_param = d + m * D + p + m * P + 10 * n_params();
    return static_cast<std::size_t>(std::max(lag_guard, per_param));
}

bool ar_polynomial_stationary(std::span<const double> phi) {
    return recursion_coeffs_stable(std::vector<double>(phi.begin(), phi.end()));
}

bool ma_polynomial_invertible(std::span<const double> theta) {
    std::vector<double> as_ar(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        as_ar[i] = -theta[i];
    }
    return recursion_coeffs_stable(std::move(as_ar));
}

ArimaFit fit(const TimeSeries& series, const ModelOrder& order) {
    order.validate();
    if (series.size() <= order.min_series_length()) {
        throw Error::data("SeriesTooShort",
                          "need more than " + std::to_string(order.min_series_length()) +
                              " observations for this order, got " +
                              std::to_string(series.size()));
    }

    const std::vector<double> z = apply_model_differencing(series.values(), order);
    const std::size_t pa = static_cast<std::size_t>(order.p + order.P * order.m);
    const std::size_t n_eff = z.size() - pa;
    const int k_coef = order.p + order.q + order.P + order.Q + (order.include_constant ? 1 : 0);

    const auto objective = [&z, &order, pa](std::span<const double> params) -> double {
        const ArimaCoefficients c = unpack_coefficients(params, order);
        const ExpandedModel em = expand(order, c);
        if (!expanded_model_admissible(em)) {
            return kPenalty;
        }
        const double css = conditional_sum_of_squares(z, pa, em, c.constant, nullptr);
        return std::isfinite(css) ? css : kPenalty;
    };

    ArimaCoefficients best;
    best.ar.resize(static_cast<std::size_t>(order.p), 0.0);
    best.ma.resize(static_cast<std::size_t>(order.q), 0.0);
    best.seasonal_ar.resize(static_cast<std::size_t>(order.P), 0.0);
    best.seasonal_ma.resize(static_cast<std::size_t>(order.Q), 0.0);

    std::vector<double> optimum;
    if (k_coef > 0) {
        ArimaCoefficients initial = best;
        initial.ar = yule_walker_initials(z, order.p);
        if (order.include_constant) {
            const double z_mean = std::accumulate(z.begin(), z.end(), 0.0) /
                                  static_cast<double>(z.size());
            const double ar_sum = std::accumulate(initial.ar.begin(), initial.ar.end(), 0.0);
            initial.constant = z_mean * (1.0 - ar_sum);
        }
        const std::vector<double> start_a = pack_coefficients(initial, order.include_constant);
        const std::vector<double> start_b(start_a.size(), 0.0);

        const int max_iterations = 200 * (k_coef + 1);
        const NelderMeadResult run_a = nelder_mead(objective, start_a, max_iterations, 1e-8);
        const NelderMeadResult run_b = nelder_mead(objective, start_b, max_iterations, 1e-8);
        if (!run_a.converged && !run_b.converged) {
            throw Error::numeric("OptimizerDidNotConverge",
                                 "simplex hit the iteration cap from both starting points");
        }
        const NelderMeadResult& winner = run_a.fx <= run_b.fx ? run_a : run_b;
        optimum = winner.x;
        best = unpack_coefficients(optimum, order);
    }

    ArimaFit result;
    result.order = order;
    result.coeffs = best;

    const ExpandedModel em = expand(order, best);
    std::vector<double> innovations;
    const double css = conditional_sum_of_squares(z, pa, em, best.constant, &innovations);
    result.residuals.assign(innovations.begin() + static_cast<std::ptrdiff_t>(pa),
                            innovations.end());
    result.n_effective = n_eff;
    result.sigma2 = css / static_cast<double>(n_eff);
    if (!std::isfinite(result.sigma2)) {
        throw Error::numeric("DegenerateVariance", "residual variance is not finite");
    }
    const double s2 = clamped_log_likelihood_sigma2(result.sigma2);
    result.log_likelihood =
        -0.5 * static_cast<double>(n_eff) * (std::log(kTwoPi * s2) + 1.0);
    const InformationCriteria ic =
        information_criteria(result.log_likelihood, order.n_params(), n_eff);
    result.aic = ic.aic;
    result.bic = ic.bic;
    result.hqic = ic.hqic;

    if (k_coef > 0) {
        result.coeff_std_errors = hessian_standard_errors(objective, optimum, result.sigma2);
    }
    return result;
}

ForecastResult forecast(const ArimaFit& fit, const TimeSeries& series, int horizon) {
    if (horizon < 1) {
        throw Error::usage("BadHorizon", "forecast horizon must be >= 1");
    }
    const ModelOrder& order = fit.order;
    const std::vector<double> g = generalized_ar_poly(order, fit.coeffs);
    const std::vector<double> u =
        multiplicative_poly(fit.coeffs.ma, fit.coeffs.seasonal_ma, order.m, 1.0);
    const std::size_t deg_g = g.size() - 1;
    const std::size_t deg_u = u.size() - 1;

    const std::size_t n = series.size();
    const std::size_t diff_offset =
        static_cast<std::size_t>(order.d + order.D * order.m + order.p + order.P * order.m);

    std::vector<double> history(series.values());
    std::vector<double> innovations(n, 0.0);
    for (std::size_t j = 0; j < fit.residuals.size() && diff_offset + j < n; ++j) {
        innovations[diff_offset + j] = fit.residuals[j];
    }

    ForecastResult out;
    out.horizon = horizon;
    out.mean.reserve(static_cast<std::size_t>(horizon));
    history.reserve(n + static_cast<std::size_t>(horizon));
    innovations.reserve(n + static_cast<std::size_t>(horizon));
    for (int step = 0; step < horizon; ++step) {
        const std::size_t t = history.size();
        double pred = fit.coeffs.constant;
        for (std::size_t k = 1; k <= deg_g && k <= t; ++k) {
            pred -= g[k] * history[t - k];
        }
        for (std::size_t k = 1; k <= deg_u && k <= t; ++k) {
            pred += u[k] * innovations[t - k];
        }
        history.push_back(pred);
        innovations.push_back(0.0);
        out.mean.push_back(pred);
    }

    out.psi_weights = psi_weights(order, fit.coeffs, horizon);
    out.lower_95.resize(static_cast<std::size_t>(horizon));
    out.upper_95.resize(static_cast<std::size_t>(horizon));
    double cumulative = 0.0;
    for (int h = 0; h < horizon; ++h) {
        const double psi = out.psi_weights[static_cast<std::size_t>(h)];
        cumulative += psi * psi;
        const double half_width = 1.96 * std::sqrt(fit.sigma2 * cumulative);
        out.lower_95[static_cast<std::size_t>(h)] =
            out.mean[static_cast<std::size_t>(h)] - half_width;
        out.upper_95[static_cast<std::size_t>(h)] =
            out.mean[static_cast<std::size_t>(h)] + half_width;
    }
    out.future_timestamps = predict_timestamps(series.last_epoch_ms() / 1000, horizon);
    return out;
}

TimeSeries simulate(const ModelOrder& order, const ArimaCoefficients& coeffs, std::size_t n,
                    std::uint64_t seed, double sigma) {
    order.validate();
    if (coeffs.ar.size() != static_cast<std::size_t>(order.p) ||
        coeffs.ma.size() != static_cast<std::size_t>(order.q) ||
        coeffs.seasonal_ar.size() != static_cast<std::size_t>(order.P) ||
        coeffs.seasonal_ma.size() != static_cast<std::size_t>(order.Q)) {
        throw Error::usage("LengthMismatch", "coefficient vectors must match the model order");
    }
    if (sigma < 0.0) {
        throw Error::usage("BadSigma", "sigma must be non-negative");
    }
    const std::size_t differenced_away =
        static_cast<std::size_t>(order.d + order.D * order.m);
    if (n < 1 || n <= differenced_away) {
        throw Error::usage("BadLength",
                           "n must exceed the number of observations lost to differencing");
    }
    const ExpandedModel em = expand(order, coeffs);
    if (!recursion_coeffs_stable(em.ar)) {
        throw Error::usage("NonStationaryCoefficients",
                           "AR polynomial has roots on or inside the unit circle");
    }
    std::vector<double> ma_as_ar(em.ma.size());
    for (std::size_t i = 0; i < em.ma.size(); ++i) {
        ma_as_ar[i] = -em.ma[i];
    }
    if (!recursion_coeffs_stable(std::move(ma_as_ar))) {
        throw Error::usage("NonStationaryCoefficients",
                           "MA polynomial has roots on or inside the unit circle");
    }

    constexpr std::size_t kBurnIn = 100;
    const std::size_t nz = n - differenced_away;
    const std::size_t total = kBurnIn + nz;
    Rng rng(seed);
    std::vector<double> w(total, 0.0);
    std::vector<double> e(total, 0.0);
    for (std::size_t t = 0; t < total; ++t) {
        e[t] = sigma * rng.normal();
        double value = coeffs.constant + e[t];
        for (std::size_t k = 1; k <= em.ar.size() && k <= t; ++k) {
            value += em.ar[k - 1] * w[t - k];
        }
        for (std::size_t k = 1; k <= em.ma.size() && k <= t; ++k) {
            value += em.ma[k - 1] * e[t - k];
        }
        w[t] = value;
    }

    std::vector<double> values(w.begin() + kBurnIn, w.end());
    for (int j = 0; j < order.D; ++j) {
        const std::size_t m = static_cast<std::size_t>(order.m);
        std::vector<double> integrated(values.size() + m, 0.0);
        for (std::size_t t = 0; t < values.size(); ++t) {
            integrated[t + m] = values[t] + integrated[t];
        }
        values = std::move(integrated);
    }
    if (order.d > 0) {
        const std::vector<double> zeros(static_cast<std::size_t>(order.d), 0.0);
        values = undifference(values, order.d, zeros);
    }
    return TimeSeries::from_values(std::move(values), kSyntheticEpochMs, kHourMs, "simulated");
}

ArimaFit fit_partitioned(const TimeSeries& series, const ModelOrder& order, int k_parts) {
    if (k_parts < 2) {
        throw Error::usage("BadPartitionCount", "k_parts must be at least 2");
    }
    order.validate();
    const std::size_t n = series.size();
    const std::size_t base = n / static_cast<std::size_t>(k_parts);
    if (base <= order.min_series_length()) {
        throw Error::data("PartTooShort",
                          "each of the " + std::to_string(k_parts) +
                              " parts needs more than " +
                              std::to_string(order.min_series_length()) + " observations");
    }

    std::vector<ArimaFit> parts;
    parts.reserve(static_cast<std::size_t>(k_parts));
    for (int i = 0; i < k_parts; ++i) {
        const std::size_t offset = static_cast<std::size_t>(i) * base;
        const std::size_t count = i == k_parts - 1 ? n - offset : base;
        try {
            parts.push_back(fit(series.slice(offset, count), order));
        } catch (const Error& e) {
            throw Error(e.error_class(), e.kind(),
                        "part " + std::to_string(i + 1) + ": " + e.what());
        }
    }

    const double inv_k = 1.0 / static_cast<double>(k_parts);
    ArimaFit combined;
    combined.order = order;
    combined.coeffs.ar.resize(static_cast<std::size_t>(order.p), 0.0);
    combined.coeffs.ma.resize(static_cast<std::size_t>(order.q), 0.0);
    combined.coeffs.seasonal_ar.resize(static_cast<std::size_t>(order.P), 0.0);
    combined.coeffs.seasonal_ma.resize(static_cast<std::size_t>(order.Q), 0.0);
    double sigma2 = 0.0;
    for (const ArimaFit& part : parts) {
        for (std::size_t i = 0; i < combined.coeffs.ar.size(); ++i) {
            combined.coeffs.ar[i] += part.coeffs.ar[i] * inv_k;
        }
        for (std::size_t i = 0; i < combined.coeffs.ma.size(); ++i) {
            combined.coeffs.ma[i] += part.coeffs.ma[i] * inv_k;
        }
        for (std::size_t i = 0; i < combined.coeffs.seasonal_ar.size(); ++i) {
            combined.coeffs.seasonal_ar[i] += part.coeffs.seasonal_ar[i] * inv_k;
        }
        for (std::size_t i = 0; i < combined.coeffs.seasonal_ma.size(); ++i) {
            combined.coeffs.seasonal_ma[i] += part.coeffs.seasonal_ma[i] * inv_k;
        }
        combined.coeffs.constant += part.coeffs.constant * inv_k;
        sigma2 += part.sigma2 * inv_k;
    }
    combined.sigma2 = sigma2;

    // Independent-part averaging shrinks the estimator variance by 1/k.
    const std::size_t n_se = parts.front().coeff_std_errors.size();
    combined.coeff_std_errors.assign(n_se, 0.0);
    for (std::size_t i = 0; i < n_se; ++i) {
        double mean_sq = 0.0;
        for (const ArimaFit& part : parts) {
            mean_sq += part.coeff_std_errors[i] * part.coeff_std_errors[i] * inv_k;
        }
        combined.coeff_std_errors[i] = std::sqrt(mean_sq * inv_k);
    }

    const std::vector<double> z = apply_model_differencing(series.values(), order);
    const std::size_t pa = static_cast<std::size_t>(order.p + order.P * order.m);
    const ExpandedModel em = expand(order, combined.coeffs);
    std::vector<double> innovations;
    const double css =
        conditional_sum_of_squares(z, pa, em, combined.coeffs.constant, &innovations);
    combined.residuals.assign(innovations.begin() + static_cast<std::ptrdiff_t>(pa),
                              innovations.end());
    combined.n_effective = z.size() - pa;
    const double s2 = clamped_log_likelihood_sigma2(combined.sigma2);
    combined.log_likelihood =
        -0.5 * static_cast<double>(combined.n_effective) * std::log(kTwoPi * s2) -
        css / (2.0 * s2);
    const InformationCriteria ic =
        information_criteria(combined.log_likelihood, order.n_params(), combined.n_effective);
    combined.aic = ic.aic;
    combined.bic = ic.bic;
    combined.hqic = ic.hqic;
    return combined;
}

InformationCriteria information_criteria(double log_likelihood, int n_params,
                                         std::size_t n_effective) {
    const double k = static_cast<double>(n_params);
    const double n = static_cast<double>(n_effective);
    InformationCriteria ic;
    ic.aic = -2.0 * log_likelihood + 2.0 * k;
    ic.bic = -2.0 * log_likelihood + k * std::log(n);
    ic.hqic = -2.0 * log_likelihood + 2.0 * k * std::log(std::log(n));
    return ic;
}

std::vector<double> psi_weights(const ModelOrder& order, const ArimaCoefficients& coeffs,
                                int count) {
    if (count < 1) {
        throw Error::usage("BadHorizon", "psi weight count must be >= 1");
    }
    const std::vector<double> g = generalized_ar_poly(order, coeffs);
    const std::vector<double> u =
        multiplicative_poly(coeffs.ma, coeffs.seasonal_ma, order.m, 1.0);
    std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
    psi[0] = 1.0;
    for (std::size_t j = 1; j < psi.size(); ++j) {
        double value = j < u.size() ? u[j] : 0.0;
        for (std::size_t i = 1; i < g.size() && i <= j; ++i) {
            value -= g[i] * psi[j - i];
        }
        psi[j] = value;
    }
    return psi;
}

}  // namespace tc
