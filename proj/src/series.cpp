#include "series.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace tc {

namespace {

std::vector<std::int64_t> build_grid(std::size_t n, std::int64_t start, std::int64_t spacing) {
    std::vector<std::int64_t> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = start + static_cast<std::int64_t>(i) * spacing;
    }
    return grid;
}

}  // namespace

TimeSeries::TimeSeries(std::vector<std::int64_t> epoch_ms, std::vector<double> values,
                       std::int64_t spacing_ms, std::string name)
    : epoch_ms_(std::move(epoch_ms)),
      values_(std::move(values)),
      spacing_ms_(spacing_ms),
      name_(std::move(name)) {
    if (values_.empty()) {
        throw Error::data("EmptySeries", "time series must contain at least one point");
    }
    if (epoch_ms_.size() != values_.size()) {
        throw Error::usage("LengthMismatch", "timestamp and value counts differ");
    }
    if (spacing_ms_ <= 0) {
        throw Error::usage("BadSpacing", "spacing must be positive");
    }
    if (epoch_ms_.front() < 0) {
        throw Error::data("NegativeTimestamp", "timestamps must be non-negative");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "non-finite value at index " << i;
            throw Error::data("NonFiniteValue", msg.str());
        }
    }
    for (std::size_t i = 1; i < epoch_ms_.size(); ++i) {
        const std::int64_t gap = epoch_ms_[i] - epoch_ms_[i - 1];
        if (gap != spacing_ms_) {
            std::ostringstream msg;
            msg << "expected spacing " << spacing_ms_ << " ms between timestamps "
                << epoch_ms_[i - 1] << " and " << epoch_ms_[i] << " (gap " << gap << " ms)";
            throw Error::data("NonHourlySpacing", msg.str());
        }
    }
}

TimeSeries TimeSeries::from_values(std::vector<double> values, std::int64_t start_epoch_ms,
                                   std::int64_t spacing_ms, std::string name) {
    auto grid = build_grid(values.size(), start_epoch_ms, spacing_ms);
    return TimeSeries(std::move(grid), std::move(values), spacing_ms, std::move(name));
}

TimeSeries TimeSeries::slice(std::size_t offset, std::size_t count) const {
    if (offset + count > size() || count == 0) {
        throw Error::usage("BadSlice", "slice out of range");
    }
    std::vector<std::int64_t> stamps(epoch_ms_.begin() + static_cast<std::ptrdiff_t>(offset),
                                     epoch_ms_.begin() + static_cast<std::ptrdiff_t>(offset + count));
    std::vector<double> vals(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                             values_.begin() + static_cast<std::ptrdiff_t>(offset + count));
    return TimeSeries(std::move(stamps), std::move(vals), spacing_ms_, name_);
}

TimeSeries TimeSeries::with_values(std::vector<double> values, std::string name) const {
    if (values.size() != size()) {
        throw Error::usage("LengthMismatch", "replacement values must match series length");
    }
    return TimeSeries(epoch_ms_, std::move(values), spacing_ms_, std::move(name));
}

NormalizationParams::NormalizationParams(double min_value, double max_value)
    : min(min_value), max(max_value) {
    if (!(max > min)) {
        throw Error::data("ConstantSeries", "normalization range requires max > min");
    }
}

NormalizedSeries minmax_normalize(const TimeSeries& series) {
    double lo = series.values().front();
    double hi = lo;
    for (double v : series.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    NormalizationParams params(lo, hi);  // throws ConstantSeries when hi == lo
    const double range = hi - lo;
    std::vector<double> scaled(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        scaled[i] = (series.value_at(i) - lo) / range;
    }
    return {series.with_values(std::move(scaled), series.name()), params};
}

TimeSeries denormalize(const TimeSeries& series, const NormalizationParams& params) {
    const double range = params.max - params.min;
    std::vector<double> restored(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        restored[i] = series.value_at(i) * range + params.min;
    }
    return series.with_values(std::move(restored), series.name());
}

std::vector<double> difference(std::span<const double> values, int order) {
    if (order < 0 || order > 2) {
        throw Error::usage("UnsupportedOrder", "differencing order must be 0, 1, or 2");
    }
    if (values.size() <= static_cast<std::size_t>(order)) {
        throw Error::data("SeriesTooShort", "series shorter than differencing order");
    }
    std::vector<double> out(values.begin(), values.end());
    for (int pass = 0; pass < order; ++pass) {
        out = difference_once(out, 1);
    }
    return out;
}

std::vector<double> difference_once(std::span<const double> values, std::size_t lag) {
    if (values.size() <= lag) {
        throw Error::data("SeriesTooShort", "series shorter than differencing lag");
    }
    std::vector<double> out(values.size() - lag);
    for (std::size_t i = lag; i < values.size(); ++i) {
        out[i - lag] = values[i] - values[i - lag];
    }
    return out;
}

std::vector<double> undifference(std::span<const double> diffed, int order,
                                 std::span<const double> initial_values) {
    if (order < 0 || initial_values.size() != static_cast<std::size_t>(order)) {
        throw Error::usage("LengthMismatch", "initial_values must have length equal to order");
    }
    if (order == 0) {
        return {diffed.begin(), diffed.end()};
    }
    // The first differences of the original start with diff(initial_values)
    // and continue with the undifferenced tail; one final cumulative sum
    // anchored at initial_values[0] restores the original.
    std::vector<double> init_diffs(static_cast<std::size_t>(order - 1));
    for (std::size_t i = 0; i + 1 < initial_values.size(); ++i) {
        init_diffs[i] = initial_values[i + 1] - initial_values[i];
    }
    const std::vector<double> first_diffs = undifference(diffed, order - 1, init_diffs);
    std::vector<double> out;
    out.reserve(first_diffs.size() + 1);
    out.push_back(initial_values.front());
    for (double d : first_diffs) {
        out.push_back(out.back() + d);
    }
    return out;
}

DataSplit split_train_val_test(const TimeSeries& series, double train_fraction,
                               double validation_fraction, double test_fraction) {
    const double sum = train_fraction + validation_fraction + test_fraction;
    if (train_fraction <= 0 || validation_fraction <= 0 || test_fraction <= 0 ||
        std::abs(sum - 1.0) > 1e-9) {
        throw Error::usage("BadFractions", "fractions must be positive and sum to 1");
    }
    const std::size_t n = series.size();
    if (n < 10) {
        throw Error::data("SeriesTooShort", "need at least 10 points to split");
    }
    const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
    const auto n_val = static_cast<std::size_t>(std::floor(validation_fraction * static_cast<double>(n)));
    const std::size_t n_test = n - n_train - n_val;
    DataSplit split{series.slice(0, n_train), series.slice(n_train, n_val),
                    series.slice(n_train + n_val, n_test)};
    split.fractions[0] = train_fraction;
    split.fractions[1] = validation_fraction;
    split.fractions[2] = test_fraction;
    return split;
}

std::vector<std::int64_t> predict_timestamps(std::int64_t last_epoch_s, int n_hours) {
    if (n_hours < 1) {
        throw Error::usage("NonPositiveHorizon", "horizon must be at least 1 hour");
    }
    std::vector<std::int64_t> out(static_cast<std::size_t>(n_hours));
    for (int k = 1; k <= n_hours; ++k) {
        out[static_cast<std::size_t>(k - 1)] = last_epoch_s + static_cast<std::int64_t>(k) * kHourSeconds;
    }
    return out;
}

std::vector<std::int64_t> timestamps_to_ms(std::span<const std::int64_t> epoch_s) {
    std::vector<std::int64_t> out(epoch_s.size());
    for (std::size_t i = 0; i < epoch_s.size(); ++i) {
        out[i] = epoch_s[i] * 1000;
    }
    return out;
}

}  // namespace tc
