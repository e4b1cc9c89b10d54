#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "synth.hpp"

namespace tc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Median of three timed runs of `body`; each run is complete before the
/// next starts.
template <typename F>
double median_of_three(F&& body) {
    double t[3];
    for (int rep = 0; rep < 3; ++rep) {
        const auto start = Clock::now();
        body();
        t[rep] = seconds_since(start);
    }
    std::sort(t, t + 3);
    return t[1];
}

MetricReport score(std::span<const double> actual, std::span<const double> predicted) {
    MetricReport report;
    report.rmse = rmse(actual, predicted);
    report.mape_percent = mape(actual, predicted);
    report.balanced_accuracy = balanced_accuracy(direction_confusion(actual, predicted));
    report.n_points = actual.size();
    return report;
}

}  // namespace

SpeedTable run_speed_test(const std::vector<std::size_t>& row_counts, std::uint64_t seed,
                          const ModelOrder& arima_order, const CnnConfig& cnn_config) {
    if (row_counts.empty()) { throw Error::usage("BadRowCounts", "need at least one row count"); }
    for (std::size_t i = 1; i < row_counts.size(); ++i) {
        if (row_counts[i] <= row_counts[i - 1]) {
            throw Error::usage("BadRowCounts", "row counts must be strictly increasing");
        }
    }
    arima_order.validate();
    cnn_config.validate();

    SyntheticSpec spec;
    spec.kind = SyntheticKind::ar_process;
    spec.ar_coeffs = {0.7};
    const std::size_t arima_min = arima_order.min_series_length() + 1;
    const std::size_t cnn_min =
        static_cast<std::size_t>(cnn_config.window) + cnn_config.max_horizon();

    SpeedTable table;
    for (std::size_t count : row_counts) {
        SpeedRow row;
        row.row_count = count;
        if (count < arima_min || count < cnn_min) {
            row.skipped = true;
            table.rows.push_back(row);
            continue;
        }
        const TimeSeries series = generate_synthetic(spec, count, seed, 1.0);
        try {
            row.arima_seconds = median_of_three([&] {
                const ArimaFit fitted = fit(series, arima_order);
                (void)forecast(fitted, series, 24);
            });
            row.arima_ok = true;
        } catch (const Error&) {
            row.arima_seconds = 0.0;
        }
        try {
            row.cnn_seconds = median_of_three([&] {
                const NormalizedSeries norm = minmax_normalize(series);
                auto [model, report] = train(norm.series, cnn_config);
                (void)predict_series(model, norm.series.values(), cnn_config.max_horizon());
            });
            row.cnn_ok = true;
        } catch (const Error&) {
            row.cnn_seconds = 0.0;
        }
        table.rows.push_back(row);
    }

    std::vector<std::pair<double, double>> arima_pts{{0.0, 0.0}};
    std::vector<std::pair<double, double>> cnn_pts{{0.0, 0.0}};
    for (const SpeedRow& row : table.rows) {
        if (row.arima_ok) { arima_pts.emplace_back(row.row_count, row.arima_seconds); }
        if (row.cnn_ok) { cnn_pts.emplace_back(row.row_count, row.cnn_seconds); }
    }
    table.arima_slope = arima_pts.size() > 1 ? slope(arima_pts) : 0.0;
    table.cnn_slope = cnn_pts.size() > 1 ? slope(cnn_pts) : 0.0;
    table.ratio_at_max = std::numeric_limits<double>::quiet_NaN();
    for (auto it = table.rows.rbegin(); it != table.rows.rend(); ++it) {
        if (it->arima_ok && it->cnn_ok && it->arima_seconds > 0.0) {
            table.ratio_at_max = it->cnn_seconds / it->arima_seconds;
            break;
        }
    }
    return table;
}

CompareReport compare_models(const DataSplit& split, const ModelOrder& arima_order,
                             const CnnConfig& cnn_config) {
    CompareReport report;
    report.test_points = split.test.size();
    report.adf_p_train = adf_test(split.train.values()).p_value;

    const ArimaFit arima_fit = fit(split.train, arima_order);
    const ForecastResult arima_fc =
        forecast(arima_fit, split.train, static_cast<int>(split.test.size()));
    report.arima = score(split.test.values(), arima_fc.mean);

    const NormalizedSeries norm = minmax_normalize(split.train);
    const double scale = norm.params.max - norm.params.min;
    std::optional<TimeSeries> norm_validation;
    if (split.validation.size() > 0) {
        std::vector<double> v(split.validation.values());
        for (double& x : v) { x = (x - norm.params.min) / scale; }
        norm_validation.emplace(split.validation.with_values(std::move(v), "validation"));
    }
    auto [cnn_model, cnn_train] =
        train(norm.series, cnn_config, norm_validation ? &*norm_validation : nullptr);
    report.cnn_validation_mse = cnn_train.validation_mse;

    report.cnn_horizon =
        static_cast<int>(std::min<std::size_t>(split.test.size(), cnn_config.max_horizon()));
    report.cnn_truncated = report.cnn_horizon != static_cast<int>(split.test.size()) ||
                           report.cnn_horizon != cnn_config.max_horizon();
    std::vector<double> cnn_pred =
        predict_series(cnn_model, norm.series.values(), report.cnn_horizon);
    for (double& v : cnn_pred) { v = v * scale + norm.params.min; }
    report.cnn = score(std::span<const double>(split.test.values())
                           .subspan(0, static_cast<std::size_t>(report.cnn_horizon)),
                       cnn_pred);
    return report;
}

}  // namespace tc
