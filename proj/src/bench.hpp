#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arima.hpp"
#include "cnn.hpp"
#include "metrics.hpp"
#include "series.hpp"

namespace tc {

struct SpeedRow {
    std::size_t row_count = 0;
    double arima_seconds = 0.0;  // median of 3 runs; 0 when skipped or failed
    double cnn_seconds = 0.0;
    bool skipped = false;  // below a model's minimum series length
    bool arima_ok = false;
    bool cnn_ok = false;
};

struct SpeedTable {
    std::vector<SpeedRow> rows;
    double arima_slope = 0.0;  // seconds per row, origin through the largest timed count
    double cnn_slope = 0.0;
    double ratio_at_max = 0.0;  // cnn/arima seconds at the largest count timed for both
};

/// Times both models end to end (model build plus forecast) on one seeded
/// synthetic series per row count, strictly sequentially, recording the
/// median of three runs. Rows below either model's minimum length are
/// marked skipped; per-cell model failures are marked not-ok. Error kind:
/// BadRowCounts (empty or not strictly increasing).
SpeedTable run_speed_test(const std::vector<std::size_t>& row_counts, std::uint64_t seed,
                          const ModelOrder& arima_order, const CnnConfig& cnn_config);

struct MetricReport {
    double rmse = 0.0;
    double mape_percent = 0.0;
    double balanced_accuracy = 0.0;
    std::size_t n_points = 0;
};

struct CompareReport {
    MetricReport arima;
    MetricReport cnn;
    double adf_p_train = 0.0;
    int cnn_horizon = 0;       // test steps the CNN actually covered
    bool cnn_truncated = false;  // CNN span differed from the full test span
    std::size_t test_points = 0;
    std::optional<double> cnn_validation_mse;
};

/// Fits both models on the training split and scores their forecasts
/// against the test split. The ARIMA forecast covers the whole test range;
/// the CNN covers min(test length, largest head horizon) steps on the
/// normalized scale and is mapped back before scoring. Model and metric
/// errors propagate.
CompareReport compare_models(const DataSplit& split, const ModelOrder& arima_order,
                             const CnnConfig& cnn_config);

}  // namespace tc
