#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "csv.hpp"
#include "dist.hpp"
#include "errors.hpp"
#include "json.hpp"

namespace tc {
namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

/// Fixed-point for mid-range magnitudes, scientific otherwise, so wide
/// coefficient scales stay readable in one column.
std::string fmt_val(double v, int decimals) {
    if (std::isnan(v)) { return "nan"; }
    const double a = std::abs(v);
    if (a != 0.0 && (a >= 1e5 || a < 1e-4)) {
        char spec[8];
        std::snprintf(spec, sizeof(spec), "%%.%dg", decimals);
        return fmt(spec, v);
    }
    char spec[8];
    std::snprintf(spec, sizeof(spec), "%%.%df", decimals);
    return fmt(spec, v);
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

constexpr std::size_t kWidth = 78;
constexpr std::size_t kHalf = 38;

std::string half_row(const std::string& key, const std::string& val) {
    std::string out = key;
    const std::size_t used = key.size() + val.size();
    out += used < kHalf ? std::string(kHalf - used, ' ') : std::string(" ");
    out += val;
    return out;
}

std::string two_col(const std::string& lk, const std::string& lv, const std::string& rk,
                    const std::string& rv) {
    std::string line = half_row(lk, lv);
    if (!rk.empty() || !rv.empty()) {
        line += "  ";
        line += half_row(rk, rv);
    }
    return line + "\n";
}

std::string rule(char c) { return std::string(kWidth, c) + "\n"; }

std::string model_label(const ModelOrder& o) {
    char buf[96];
    if (o.m == 0) {
        std::snprintf(buf, sizeof(buf), "SARIMAX(%d, %d, %d)", o.p, o.d, o.q);
    } else {
        std::snprintf(buf, sizeof(buf), "SARIMAX(%d, %d, %d)x(%d, %d, %d, %d)", o.p, o.d, o.q,
                      o.P, o.D, o.Q, o.m);
    }
    return buf;
}

struct CoeffRow {
    std::string name;
    double coef = 0.0;
    double se = 0.0;
};

/// Display rows in summary order; standard errors are packed ar, ma,
/// seasonal ar, seasonal ma, constant.
std::vector<CoeffRow> coefficient_rows(const ArimaFit& fit) {
    std::vector<CoeffRow> rows;
    const ModelOrder& o = fit.order;
    const std::vector<double>& se = fit.coeff_std_errors;
    std::size_t i = 0;
    auto se_at = [&](std::size_t idx) {
        return idx < se.size() ? se[idx] : std::numeric_limits<double>::quiet_NaN();
    };
    if (o.include_constant) {
        rows.push_back({"intercept", fit.coeffs.constant,
                        se_at(static_cast<std::size_t>(o.p + o.q + o.P + o.Q))});
    }
    for (int j = 0; j < o.p; ++j, ++i) {
        rows.push_back({"ar.L" + std::to_string(j + 1), fit.coeffs.ar[j], se_at(i)});
    }
    for (int j = 0; j < o.q; ++j, ++i) {
        rows.push_back({"ma.L" + std::to_string(j + 1), fit.coeffs.ma[j], se_at(i)});
    }
    for (int j = 0; j < o.P; ++j, ++i) {
        rows.push_back(
            {"ar.S.L" + std::to_string((j + 1) * o.m), fit.coeffs.seasonal_ar[j], se_at(i)});
    }
    for (int j = 0; j < o.Q; ++j, ++i) {
        rows.push_back(
            {"ma.S.L" + std::to_string((j + 1) * o.m), fit.coeffs.seasonal_ma[j], se_at(i)});
    }
    const double n = static_cast<double>(fit.n_effective);
    rows.push_back({"sigma2", fit.sigma2, fit.sigma2 * std::sqrt(2.0 / n)});
    return rows;
}

double z_of(const CoeffRow& r) { return r.coef / r.se; }

double p_of(double z) {
    if (std::isnan(z)) { return std::numeric_limits<double>::quiet_NaN(); }
    return 2.0 * (1.0 - normal_cdf(std::abs(z)));
}

const char* cell_or(const SpeedRow& row, bool ok, double seconds, char* buf, std::size_t len) {
    if (row.skipped) { return "skipped"; }
    if (!ok) { return "failed"; }
    std::snprintf(buf, len, "%.6f", seconds);
    return buf;
}

}  // namespace

std::string format_sig(double v, int sig_figs) {
    if (sig_figs < 1 || sig_figs > 17) {
        throw Error::usage("BadSigFigs", "significant figures must be between 1 and 17");
    }
    if (std::isnan(v)) { return "nan"; }
    if (std::isinf(v)) { return v > 0 ? "inf" : "-inf"; }
    if (v == 0.0) { return "0"; }
    const bool negative = v < 0.0;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*e", 18, std::abs(v));
    // buf looks like d.dddddddddddddddddde[+-]xx
    std::string digits;
    digits.push_back(buf[0]);
    const char* p = buf + 2;
    while (*p != 'e') { digits.push_back(*p++); }
    int exponent = std::atoi(p + 1);

    long long kept = 0;
    for (int i = 0; i < sig_figs; ++i) { kept = kept * 10 + (digits[i] - '0'); }
    if (digits[sig_figs] - '0' >= 6) {
        kept += 1;
        long long cap = 1;
        for (int i = 0; i < sig_figs; ++i) { cap *= 10; }
        if (kept == cap) {  // carry rolled over, e.g. 99.7 -> 100
            kept /= 10;
            exponent += 1;
        }
    }
    std::string ks = std::to_string(kept);
    while (static_cast<int>(ks.size()) < sig_figs) { ks.insert(ks.begin(), '0'); }

    std::string out;
    const int decimals = sig_figs - 1 - exponent;
    if (decimals <= 0) {
        out = ks + std::string(static_cast<std::size_t>(-decimals), '0');
    } else if (exponent >= 0) {
        out = ks.substr(0, static_cast<std::size_t>(exponent) + 1) + "." +
              ks.substr(static_cast<std::size_t>(exponent) + 1);
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent) - 1, '0') + ks;
    }
    return negative ? "-" + out : out;
}

std::string diagnostics_text(const DiagnosticsReport& diag) {
    std::string out;
    out += two_col("Ljung-Box (L1) (Q):", fmt("%.2f", diag.ljung_box_l1.statistic),
                   "Jarque-Bera (JB):", fmt("%.2f", diag.jarque_bera.statistic));
    out += two_col("Prob(Q):", fmt("%.2f", diag.ljung_box_l1.p_value),
                   "Prob(JB):", fmt("%.2f", diag.jarque_bera.p_value));
    out += two_col("Heteroskedasticity (H):", fmt("%.2f", diag.heteroskedasticity.statistic),
                   "Skew:", fmt("%.2f", diag.skew));
    out += two_col("Prob(H) (two-sided):", fmt("%.2f", diag.heteroskedasticity.p_value),
                   "Kurtosis:", fmt("%.2f", diag.kurtosis));
    return out;
}

std::string diagnostics_json(const DiagnosticsReport& diag) {
    nlohmann::json j;
    j["Ljung-Box (L1) (Q)"] = diag.ljung_box_l1.statistic;
    j["Prob(Q)"] = diag.ljung_box_l1.p_value;
    j["Jarque-Bera (JB)"] = diag.jarque_bera.statistic;
    j["Prob(JB)"] = diag.jarque_bera.p_value;
    j["Heteroskedasticity (H)"] = diag.heteroskedasticity.statistic;
    j["Prob(H)"] = diag.heteroskedasticity.p_value;
    j["Skew"] = diag.skew;
    j["Kurtosis"] = diag.kurtosis;
    return j.dump(2);
}

std::string fit_summary_text(const ArimaFit& fit, const DiagnosticsReport& diag,
                             const std::string& dep_variable) {
    std::string out;
    const std::string title = "SARIMAX Results";
    out += std::string((kWidth - title.size()) / 2, ' ') + title + "\n";
    out += rule('=');
    const std::string n_str = std::to_string(fit.n_effective);
    out += two_col("Dep. Variable:", dep_variable, "No. Observations:", n_str);
    out += two_col("Model:", model_label(fit.order),
                   "Log Likelihood", fmt("%.3f", fit.log_likelihood));
    out += two_col("Sample:", "0 - " + n_str, "AIC", fmt("%.3f", fit.aic));
    out += two_col("Covariance Type:", "fd-hessian", "BIC", fmt("%.3f", fit.bic));
    out += two_col("", "", "HQIC", fmt("%.3f", fit.hqic));
    out += rule('=');
    out += pad_right("", 12) + pad_left("coef", 11) + pad_left("std err", 11) +
           pad_left("z", 11) + pad_left("P>|z|", 9) + pad_left("[0.025", 12) +
           pad_left("0.975]", 12) + "\n";
    out += rule('-');
    for (const CoeffRow& row : coefficient_rows(fit)) {
        const double z = z_of(row);
        out += pad_right(row.name, 12) + pad_left(fmt_val(row.coef, 4), 11) +
               pad_left(fmt_val(row.se, 3), 11) + pad_left(fmt_val(z, 3), 11) +
               pad_left(std::isnan(z) ? "nan" : fmt("%.3f", p_of(z)), 9) +
               pad_left(fmt_val(row.coef - 1.96 * row.se, 3), 12) +
               pad_left(fmt_val(row.coef + 1.96 * row.se, 3), 12) + "\n";
    }
    out += rule('=');
    out += diagnostics_text(diag);
    out += rule('=');
    return out;
}

std::string fit_summary_json(const ArimaFit& fit, const DiagnosticsReport& diag,
                             const std::string& dep_variable) {
    nlohmann::json j;
    j["dep_variable"] = dep_variable;
    j["model"] = model_label(fit.order);
    j["order"] = {{"p", fit.order.p}, {"d", fit.order.d}, {"q", fit.order.q},
                  {"P", fit.order.P}, {"D", fit.order.D}, {"Q", fit.order.Q},
                  {"m", fit.order.m}, {"intercept", fit.order.include_constant}};
    j["n_observations"] = fit.n_effective;
    j["log_likelihood"] = fit.log_likelihood;
    j["aic"] = fit.aic;
    j["bic"] = fit.bic;
    j["hqic"] = fit.hqic;
    j["sigma2"] = fit.sigma2;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const CoeffRow& row : coefficient_rows(fit)) {
        const double z = z_of(row);
        nlohmann::json c;
        c["name"] = row.name;
        c["coef"] = row.coef;
        c["std_err"] = row.se;
        c["z"] = z;
        c["p_value"] = p_of(z);
        coeffs.push_back(c);
    }
    j["coefficients"] = coeffs;
    j["diagnostics"] = nlohmann::json::parse(diagnostics_json(diag));
    return j.dump(2);
}

std::string speed_table_text(const SpeedTable& table) {
    std::string out = pad_right("Rows", 12) + pad_left("ARIMA (s)", 14) +
                      pad_left("CNN (s)", 14) + "\n";
    out += std::string(40, '-') + "\n";
    char a[32];
    char c[32];
    for (const SpeedRow& row : table.rows) {
        out += pad_right(std::to_string(row.row_count), 12) +
               pad_left(cell_or(row, row.arima_ok, row.arima_seconds, a, sizeof(a)), 14) +
               pad_left(cell_or(row, row.cnn_ok, row.cnn_seconds, c, sizeof(c)), 14) + "\n";
    }
    out += "\n";
    out += "ARIMA Slope = " + format_sig(table.arima_slope, 4) + "\n";
    out += "CNN Slope = " + format_sig(table.cnn_slope, 4) + "\n";
    if (!std::isnan(table.ratio_at_max)) {
        out += "CNN/ARIMA ratio at largest count = " + format_sig(table.ratio_at_max, 4) + "\n";
    }
    return out;
}

std::string speed_table_csv(const SpeedTable& table) {
    std::string out = "row_count,arima_seconds,cnn_seconds,skipped,arima_ok,cnn_ok\n";
    for (const SpeedRow& row : table.rows) {
        out += std::to_string(row.row_count) + "," + format_full(row.arima_seconds) + "," +
               format_full(row.cnn_seconds) + "," + (row.skipped ? "1" : "0") + "," +
               (row.arima_ok ? "1" : "0") + "," + (row.cnn_ok ? "1" : "0") + "\n";
    }
    return out;
}

std::string speed_table_json(const SpeedTable& table) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const SpeedRow& row : table.rows) {
        j["rows"].push_back({{"row_count", row.row_count},
                             {"arima_seconds", row.arima_seconds},
                             {"cnn_seconds", row.cnn_seconds},
                             {"skipped", row.skipped},
                             {"arima_ok", row.arima_ok},
                             {"cnn_ok", row.cnn_ok}});
    }
    j["arima_slope"] = table.arima_slope;
    j["cnn_slope"] = table.cnn_slope;
    if (std::isnan(table.ratio_at_max)) {
        j["ratio_at_max"] = nullptr;
    } else {
        j["ratio_at_max"] = table.ratio_at_max;
    }
    return j.dump(2);
}

std::string compare_text(const CompareReport& report) {
    std::string out = pad_right("Metric", 22) + pad_left("ARIMA", 14) + pad_left("CNN", 14) + "\n";
    out += std::string(50, '-') + "\n";
    auto metric_row = [&](const char* name, double a, double c) {
        out += pad_right(name, 22) + pad_left(fmt("%.6g", a), 14) + pad_left(fmt("%.6g", c), 14) +
               "\n";
    };
    metric_row("RMSE", report.arima.rmse, report.cnn.rmse);
    metric_row("MAPE (%)", report.arima.mape_percent, report.cnn.mape_percent);
    metric_row("Balanced accuracy", report.arima.balanced_accuracy, report.cnn.balanced_accuracy);
    out += pad_right("Points scored", 22) + pad_left(std::to_string(report.arima.n_points), 14) +
           pad_left(std::to_string(report.cnn.n_points), 14) + "\n";
    out += "\n";
    out += "ADF p-value (train) = " + fmt("%.6g", report.adf_p_train) + "\n";
    out += "CNN horizon = " + std::to_string(report.cnn_horizon) +
           (report.cnn_truncated ? " (truncated)" : "") + "\n";
    if (report.cnn_validation_mse) {
        out += "CNN validation MSE = " + fmt("%.6g", *report.cnn_validation_mse) + "\n";
    }
    return out;
}

std::string compare_json(const CompareReport& report) {
    auto metrics = [](const MetricReport& m) {
        return nlohmann::json{{"rmse", m.rmse},
                              {"mape_percent", m.mape_percent},
                              {"balanced_accuracy", m.balanced_accuracy},
                              {"n_points", m.n_points}};
    };
    nlohmann::json j;
    j["arima"] = metrics(report.arima);
    j["cnn"] = metrics(report.cnn);
    j["adf_p_train"] = report.adf_p_train;
    j["cnn_horizon"] = report.cnn_horizon;
    j["cnn_truncated"] = report.cnn_truncated;
    j["test_points"] = report.test_points;
    if (report.cnn_validation_mse) {
        j["cnn_validation_mse"] = *report.cnn_validation_mse;
    } else {
        j["cnn_validation_mse"] = nullptr;
    }
    return j.dump(2);
}

std::string forecast_csv(const ForecastResult& fc) {
    std::string out = "epoch_ms,mean,lower_95,upper_95\n";
    for (int i = 0; i < fc.horizon; ++i) {
        out += std::to_string(fc.future_timestamps[i] * 1000) + "," + format_full(fc.mean[i]) +
               "," + format_full(fc.lower_95[i]) + "," + format_full(fc.upper_95[i]) + "\n";
    }
    return out;
}

std::string forecast_json(const ForecastResult& fc) {
    nlohmann::json j;
    j["horizon"] = fc.horizon;
    nlohmann::json epoch_ms = nlohmann::json::array();
    for (std::int64_t s : fc.future_timestamps) { epoch_ms.push_back(s * 1000); }
    j["epoch_ms"] = epoch_ms;
    j["mean"] = fc.mean;
    j["lower_95"] = fc.lower_95;
    j["upper_95"] = fc.upper_95;
    return j.dump(2);
}

std::string tidy_csv(const std::vector<std::tuple<std::string, double, double>>& rows) {
    // Integral x values (epoch milliseconds, lag numbers) print as plain
    // integers so time axes never come out in scientific notation.
    const auto fmt_x = [](double x) {
        if (x == std::floor(x) && std::abs(x) < 9.0e15) {
            return std::to_string(static_cast<long long>(x));
        }
        return format_full(x);
    };
    std::string out = "series_label,x,y\n";
    for (const auto& [label, x, y] : rows) {
        out += label + "," + fmt_x(x) + "," + format_full(y) + "\n";
    }
    return out;
}

}  // namespace tc
