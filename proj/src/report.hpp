#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "arima.hpp"
#include "bench.hpp"
#include "diagnostics.hpp"

namespace tc {

/// Rounds to `sig_figs` significant digits by examining only the first
/// dropped digit: 0-5 rounds toward zero, 6-9 rounds away. Error kind:
/// BadSigFigs.
std::string format_sig(double v, int sig_figs);

/// Statsmodels-style fit summary: header block (Dep. Variable, Model,
/// No. Observations, Log Likelihood, AIC, BIC, HQIC), coefficient table
/// (coef, std err, z, P>|z|, 95% bounds), then the residual-diagnostics
/// block.
std::string fit_summary_text(const ArimaFit& fit, const DiagnosticsReport& diag,
                             const std::string& dep_variable);
std::string fit_summary_json(const ArimaFit& fit, const DiagnosticsReport& diag,
                             const std::string& dep_variable);

/// Key-value diagnostics block with the fixed key set: Ljung-Box (L1) (Q),
/// Prob(Q), Jarque-Bera (JB), Prob(JB), Heteroskedasticity (H), Prob(H),
/// Skew, Kurtosis.
std::string diagnostics_text(const DiagnosticsReport& diag);
std::string diagnostics_json(const DiagnosticsReport& diag);

/// Aligned speed table plus `ARIMA Slope = v` / `CNN Slope = v` lines at 4
/// significant figures.
std::string speed_table_text(const SpeedTable& table);
std::string speed_table_csv(const SpeedTable& table);
std::string speed_table_json(const SpeedTable& table);

std::string compare_text(const CompareReport& report);
std::string compare_json(const CompareReport& report);

/// CSV with header epoch_ms,mean,lower_95,upper_95 and a JSON twin.
std::string forecast_csv(const ForecastResult& fc);
std::string forecast_json(const ForecastResult& fc);

/// Long-format plotting rows, one `series_label,x,y` line each.
std::string tidy_csv(const std::vector<std::tuple<std::string, double, double>>& rows);

}  // namespace tc
