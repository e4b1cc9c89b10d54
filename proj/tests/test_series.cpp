#include <cmath>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "rng.hpp"
#include "series.hpp"

using tc::TimeSeries;

namespace {

TimeSeries hourly(std::vector<double> values) {
    return TimeSeries::from_values(std::move(values), tc::kSyntheticEpochMs, tc::kHourMs, "x");
}

}  // namespace

TEST_CASE("minmax normalization maps the range onto [0,1] and inverts exactly") {
    const TimeSeries s = hourly({2.0, 4.0, 6.0, 3.0});
    const tc::NormalizedSeries norm = tc::minmax_normalize(s);
    CHECK(norm.params.min == 2.0);
    CHECK(norm.params.max == 6.0);
    CHECK(norm.series.value_at(0) == doctest::Approx(0.0));
    CHECK(norm.series.value_at(2) == doctest::Approx(1.0));
    CHECK(norm.series.value_at(1) == doctest::Approx(0.5));

    const TimeSeries back = tc::denormalize(norm.series, norm.params);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(back.value_at(i) == doctest::Approx(s.value_at(i)).epsilon(1e-12));
    }
}

TEST_CASE("denormalize applies v*(max-min)+min") {
    const TimeSeries unit = hourly({0.0, 0.5, 1.0});
    const TimeSeries scaled = tc::denormalize(unit, tc::NormalizationParams(2.0, 6.0));
    CHECK(scaled.value_at(0) == 2.0);
    CHECK(scaled.value_at(1) == 4.0);
    CHECK(scaled.value_at(2) == 6.0);

    const TimeSeries single = tc::denormalize(hourly({0.25}), tc::NormalizationParams(0.0, 8.0));
    CHECK(single.value_at(0) == 2.0);
}

TEST_CASE("degenerate normalization range is rejected") {
    CHECK_THROWS_AS(tc::NormalizationParams(6.0, 6.0), tc::Error);
    try {
        tc::NormalizationParams(6.0, 6.0);
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "ConstantSeries");
    }
}

TEST_CASE("differencing orders 0..2 and the quadratic-to-constant example") {
    const std::vector<double> squares{1.0, 4.0, 9.0, 16.0};
    CHECK(tc::difference(squares, 0) == squares);
    CHECK(tc::difference(squares, 1) == std::vector<double>{3.0, 5.0, 7.0});
    CHECK(tc::difference(squares, 2) == std::vector<double>{2.0, 2.0});

    CHECK_THROWS_AS(tc::difference(squares, 3), tc::Error);
    try {
        tc::difference(squares, 3);
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "UnsupportedOrder");
        CHECK(e.error_class() == tc::ErrorClass::usage);
    }
    CHECK_THROWS_AS(tc::difference(std::vector<double>{1.0}, 1), tc::Error);
}

TEST_CASE("difference then undifference is the identity for d in {1,2}") {
    tc::Rng rng(7);
    for (int d = 1; d <= 2; ++d) {
        std::vector<double> x(64);
        for (double& v : x) {
            v = 10.0 * rng.normal();
        }
        const std::vector<double> diffed = tc::difference(x, d);
        const std::vector<double> initial(x.begin(), x.begin() + d);
        const std::vector<double> back = tc::undifference(diffed, d, initial);
        REQUIRE(back.size() == x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("time series construction rejects irregular spacing") {
    const std::vector<std::int64_t> stamps{0, tc::kHourMs, 3 * tc::kHourMs};
    CHECK_THROWS_AS(TimeSeries(stamps, {1.0, 2.0, 3.0}, tc::kHourMs, "x"), tc::Error);
    try {
        TimeSeries(stamps, {1.0, 2.0, 3.0}, tc::kHourMs, "x");
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "NonHourlySpacing");
        CHECK(e.error_class() == tc::ErrorClass::data);
    }
}

TEST_CASE("time series rejects non-finite values with the offending index") {
    std::vector<double> values{1.0, std::nan(""), 3.0};
    CHECK_THROWS_WITH_AS(hourly(std::move(values)),
                         doctest::Contains("index 1"), tc::Error);
}

TEST_CASE("slice and with_values preserve the timestamp grid") {
    const TimeSeries s = hourly({1.0, 2.0, 3.0, 4.0, 5.0});
    const TimeSeries mid = s.slice(1, 3);
    CHECK(mid.size() == 3);
    CHECK(mid.value_at(0) == 2.0);
    CHECK(mid.epoch_ms_at(0) == s.epoch_ms_at(1));
    CHECK_THROWS_AS(s.slice(3, 3), tc::Error);

    const TimeSeries renamed = s.with_values({5.0, 4.0, 3.0, 2.0, 1.0}, "y");
    CHECK(renamed.name() == "y");
    CHECK(renamed.epoch_ms_at(4) == s.epoch_ms_at(4));
    CHECK_THROWS_AS(s.with_values({1.0}, "y"), tc::Error);
}

TEST_CASE("80/10/10 split uses floor counts with the remainder in test") {
    std::vector<double> values(730);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = static_cast<double>(i);
    }
    const TimeSeries s = hourly(values);
    const tc::DataSplit split = tc::split_train_val_test(s);
    CHECK(split.train.size() == 584);
    CHECK(split.validation.size() == 73);
    CHECK(split.test.size() == 73);
    CHECK(split.train.value_at(0) == 0.0);
    CHECK(split.validation.value_at(0) == 584.0);
    CHECK(split.test.value_at(72) == 729.0);
    CHECK(split.validation.epoch_ms_at(0) == split.train.last_epoch_ms() + tc::kHourMs);

    CHECK_THROWS_AS(tc::split_train_val_test(s, 0.5, 0.1, 0.1), tc::Error);
}

TEST_CASE("future timestamps continue the hourly grid in epoch seconds") {
    const std::vector<std::int64_t> future = tc::predict_timestamps(1000, 3);
    CHECK(future == std::vector<std::int64_t>{4600, 8200, 11800});
    const std::vector<std::int64_t> ms = tc::timestamps_to_ms(future);
    CHECK(ms == std::vector<std::int64_t>{4600000, 8200000, 11800000});
    CHECK_THROWS_AS(tc::predict_timestamps(1000, 0), tc::Error);
}
