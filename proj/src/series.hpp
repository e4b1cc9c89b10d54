#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tc {

inline constexpr std::int64_t kHourMs = 3'600'000;
inline constexpr std::int64_t kHourSeconds = 3'600;

/// Start epoch for generated series; matches the first subscriber sample.
inline constexpr std::int64_t kSyntheticEpochMs = 1664316000000;

struct TimePoint {
    std::int64_t epoch_ms = 0;
    double value = 0.0;
};

/// Regularly spaced series of (timestamp, value) pairs. Construction
/// enforces strictly increasing timestamps at a fixed spacing and rejects
/// non-finite values, so downstream code can assume a clean hourly grid.
class TimeSeries {
public:
    TimeSeries(std::vector<std::int64_t> epoch_ms, std::vector<double> values,
               std::int64_t spacing_ms, std::string name);

    /// Builds the timestamp grid from a start epoch and spacing.
    static TimeSeries from_values(std::vector<double> values,
                                  std::int64_t start_epoch_ms,
                                  std::int64_t spacing_ms, std::string name);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::int64_t>& timestamps() const { return epoch_ms_; }
    std::int64_t spacing_ms() const { return spacing_ms_; }
    const std::string& name() const { return name_; }

    double value_at(std::size_t i) const { return values_[i]; }
    std::int64_t epoch_ms_at(std::size_t i) const { return epoch_ms_[i]; }
    double last_value() const { return values_.back(); }
    std::int64_t last_epoch_ms() const { return epoch_ms_.back(); }

    /// Contiguous sub-series [offset, offset + count).
    TimeSeries slice(std::size_t offset, std::size_t count) const;

    /// Same timestamps, new values (sizes must match).
    TimeSeries with_values(std::vector<double> values, std::string name) const;

private:
    std::vector<std::int64_t> epoch_ms_;
    std::vector<double> values_;
    std::int64_t spacing_ms_;
    std::string name_;
};

/// Min-max scaling parameters. Degenerate ranges (max <= min) are rejected
/// at construction.
struct NormalizationParams {
    NormalizationParams(double min_value, double max_value);
    double min = 0.0;
    double max = 1.0;
};

struct DataSplit {
    TimeSeries train;
    TimeSeries validation;
    TimeSeries test;
    double fractions[3] = {0.8, 0.1, 0.1};
};

struct NormalizedSeries {
    TimeSeries series;
    NormalizationParams params;
};

/// Scales values to [0, 1]; min maps to 0 and max to 1.
NormalizedSeries minmax_normalize(const TimeSeries& series);

/// Inverse of minmax_normalize: v * (max - min) + min.
TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params);

/// Successive first differences, order in {0, 1, 2}. Order 1 maps x to
/// x[t+1] - x[t]; order 2 applies that twice.
std::vector<double> difference(std::span<const double> values, int order);

/// Cumulative reconstruction; `initial_values` are the first `order` values
/// of the original sequence.
std::vector<double> undifference(std::span<const double> diffed, int order,
                                 std::span<const double> initial_values);

/// Unbounded variants used internally by the ARIMA pipeline (no order cap).
std::vector<double> difference_once(std::span<const double> values, std::size_t lag);

/// Chronological 80/10/10-style split: floor(n*f) rows for train and
/// validation, remainder to test. No shuffling.
DataSplit split_train_val_test(const TimeSeries& series, double train_fraction = 0.8,
                               double validation_fraction = 0.1,
                               double test_fraction = 0.1);

/// Future hourly timestamps in epoch seconds: last + k*3600 for k = 1..n.
std::vector<std::int64_t> predict_timestamps(std::int64_t last_epoch_s, int n_hours);

/// Seconds -> milliseconds conversion for CSV emission.
std::vector<std::int64_t> timestamps_to_ms(std::span<const std::int64_t> epoch_s);

}  // namespace tc
