#include <cmath>
#include <vector>

#include "cnn.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "rng.hpp"
#include "series.hpp"

namespace {

tc::CnnConfig tiny_config() {
    tc::CnnConfig config;
    config.conv1_filters = 4;
    config.conv2_filters = 3;
    config.dense_units = 5;
    config.epochs = 3;
    return config;
}

tc::TimeSeries sine_series(std::size_t n) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = 0.5 + 0.5 * std::sin(2.0 * 3.14159265358979324 *
                                         static_cast<double>(i) / 24.0);
    }
    return tc::TimeSeries::from_values(std::move(values), tc::kSyntheticEpochMs, tc::kHourMs,
                                       "sine");
}

}  // namespace

TEST_CASE("window extraction counts and target alignment") {
    tc::CnnConfig config = tiny_config();
    std::vector<double> ramp(40);
    for (std::size_t i = 0; i < ramp.size(); ++i) {
        ramp[i] = static_cast<double>(i) / 40.0;
    }
    const auto windows = tc::make_windows(ramp, config);
    // 40 - window 14 - max horizon 14 + 1.
    REQUIRE(windows.size() == 13);
    REQUIRE(windows[0].input.size() == 14);
    REQUIRE(windows[0].targets.size() == config.n_heads());
    CHECK(windows[0].input[0] == 0.0);
    CHECK(windows[2].input[0] == doctest::Approx(2.0 / 40.0));

    // Head j trains toward the value `horizons[j]` steps past the window end,
    // remapped from [0,1] to the tanh range [-1,1].
    for (std::size_t j = 0; j < config.head_horizons.size(); ++j) {
        const std::size_t target_index =
            13 + static_cast<std::size_t>(config.head_horizons[j]);
        CHECK(windows[0].targets[j] ==
              doctest::Approx(2.0 * ramp[target_index] - 1.0).epsilon(1e-12));
    }

    std::vector<double> too_short(27, 0.5);  // window + max horizon - 1
    CHECK_THROWS_AS(tc::make_windows(too_short, config), tc::Error);
}

TEST_CASE("analytic gradients agree with central finite differences") {
    tc::CnnConfig config = tiny_config();
    for (std::uint64_t seed : {1ULL, 2ULL}) {
        config.seed = seed;
        tc::Rng rng(seed + 100);
        std::vector<double> input(config.window);
        std::vector<double> targets(config.n_heads());
        for (double& v : input) {
            v = rng.uniform();
        }
        for (double& t : targets) {
            t = 2.0 * rng.uniform() - 1.0;
        }
        const double err = tc::grad_check(config, input, targets);
        CHECK(err < 1e-4);
        // A deliberately coarse step degrades the agreement, so the check
        // genuinely compares two independent computations.
        CHECK(tc::grad_check(config, input, targets, 0.5) > err);
    }
}

TEST_CASE("training is bit-deterministic in the seed") {
    const tc::TimeSeries series = sine_series(120);
    tc::CnnConfig config = tiny_config();
    config.seed = 5;
    const auto [model_a, report_a] = tc::train(series, config);
    const auto [model_b, report_b] = tc::train(series, config);
    CHECK(model_a.params == model_b.params);
    CHECK(report_a.epoch_mse == report_b.epoch_mse);

    config.seed = 6;
    const auto [model_c, report_c] = tc::train(series, config);
    CHECK(model_a.params != model_c.params);
}

TEST_CASE("zero-epoch training returns the seeded initialization untouched") {
    const tc::TimeSeries series = sine_series(60);
    tc::CnnConfig config = tiny_config();
    config.epochs = 0;
    config.seed = 9;
    const auto [model, report] = tc::train(series, config);
    CHECK(report.epoch_mse.empty());
    CHECK(model.adam_step == 0);
    const tc::CnnModel fresh = tc::init_model(config);
    CHECK(model.params == fresh.params);
}

TEST_CASE("training on a clean sine reduces the loss and keeps outputs bounded") {
    const tc::TimeSeries series = sine_series(200);
    tc::CnnConfig config = tiny_config();
    config.epochs = 8;
    const auto [model, report] = tc::train(series, config);
    REQUIRE(report.epoch_mse.size() == 8);
    CHECK(report.epoch_mse.back() < report.epoch_mse.front());
    CHECK(report.wall_seconds >= 0.0);

    const auto windows = tc::make_windows(series.values(), config);
    for (const auto& w : windows) {
        const std::vector<double> out = tc::forward(model, w.input);
        REQUIRE(out.size() == config.n_heads());
        for (double v : out) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("validation series reports a held-out MSE") {
    const tc::TimeSeries series = sine_series(150);
    const tc::TimeSeries validation = sine_series(40);
    tc::CnnConfig config = tiny_config();
    config.epochs = 2;
    const auto [model, report] = tc::train(series, config, &validation);
    REQUIRE(report.validation_mse.has_value());
    CHECK(*report.validation_mse >= 0.0);

    const tc::TimeSeries short_validation = sine_series(20);
    const auto [model2, report2] = tc::train(series, config, &short_validation);
    CHECK_FALSE(report2.validation_mse.has_value());
}

TEST_CASE("prediction maps tanh outputs back to the normalized scale") {
    tc::CnnConfig config = tiny_config();
    config.seed = 3;
    tc::CnnModel zero = tc::init_model(config);
    for (double& p : zero.params) {
        p = 0.0;
    }
    std::vector<double> history(30, 0.25);
    // All-zero weights emit tanh(0) = 0 at every head -> 0.5 after mapping.
    const std::vector<double> flat = tc::predict_series(zero, history, 3);
    REQUIRE(flat.size() == 3);
    for (double v : flat) {
        CHECK(v == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(tc::predict_series(zero, history, 0), tc::Error);
    CHECK_THROWS_AS(tc::predict_series(zero, history, 15), tc::Error);  // beyond last head
    CHECK_THROWS_AS(
        tc::predict_series(zero, std::vector<double>(10, 0.1), 1), tc::Error);
}

TEST_CASE("model serialization round-trips weights, config, and optimizer state") {
    const tc::TimeSeries series = sine_series(80);
    tc::CnnConfig config = tiny_config();
    config.epochs = 1;
    config.seed = 12;
    const auto [model, report] = tc::train(series, config);

    const std::string text = tc::model_to_json(model);
    const tc::CnnModel restored = tc::model_from_json(text);
    CHECK(restored.params == model.params);
    CHECK(restored.adam_m == model.adam_m);
    CHECK(restored.adam_v == model.adam_v);
    CHECK(restored.adam_step == model.adam_step);
    CHECK(restored.config.conv1_filters == config.conv1_filters);

    const auto windows = tc::make_windows(series.values(), config);
    CHECK(tc::forward(restored, windows[0].input) == tc::forward(model, windows[0].input));

    CHECK_THROWS_AS(tc::model_from_json("{}"), tc::Error);
    CHECK_THROWS_AS(tc::model_from_json("not json"), tc::Error);
}

TEST_CASE("config validation rejects nonsense hyperparameters") {
    tc::CnnConfig config = tiny_config();
    config.kernel_size = 0;
    CHECK_THROWS_AS(config.validate(), tc::Error);
    config = tiny_config();
    config.head_horizons = {3, 1};  // must be increasing
    CHECK_THROWS_AS(config.validate(), tc::Error);
    config = tiny_config();
    config.batch_size = 0;
    CHECK_THROWS_AS(config.validate(), tc::Error);
    config = tiny_config();
    config.learning_rate = -0.1;
    CHECK_THROWS_AS(config.validate(), tc::Error);
}
