#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "metrics.hpp"
#include "rng.hpp"

TEST_CASE("rmse and mape on hand-checked vectors") {
    const std::vector<double> actual{2.0, 4.0, 6.0};
    const std::vector<double> predicted{1.0, 4.0, 8.0};
    CHECK(tc::rmse(actual, predicted) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    // |1/2| + 0 + |2/6| over 3, in percent.
    CHECK(tc::mape(actual, predicted) == doctest::Approx(100.0 * (0.5 + 1.0 / 3.0) / 3.0));

    CHECK_THROWS_AS(tc::rmse(actual, std::vector<double>{1.0}), tc::Error);
    CHECK_THROWS_AS(tc::rmse(std::vector<double>{}, std::vector<double>{}), tc::Error);
    try {
        tc::mape(std::vector<double>{1.0, 0.0, 2.0}, predicted);
        FAIL("expected ZeroActual");
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "ZeroActual");
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("balanced accuracy averages sensitivity and specificity") {
    CHECK(tc::balanced_accuracy({90, 80, 20, 10}) == 0.85);
    CHECK(tc::balanced_accuracy({1, 1, 0, 0}) == 1.0);

    try {
        tc::balanced_accuracy({0, 5, 3, 0});  // no actual positives
        FAIL("expected EmptyClass");
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "EmptyClass");
        CHECK(e.error_class() == tc::ErrorClass::data);
    }
}

TEST_CASE("balanced accuracy is bounded and count-scale invariant") {
    tc::Rng rng(37);
    for (int rep = 0; rep < 200; ++rep) {
        tc::ConfusionCounts c;
        c.tp = 1 + static_cast<long long>(rng.below(50));
        c.fn = static_cast<long long>(rng.below(50));
        c.tn = 1 + static_cast<long long>(rng.below(50));
        c.fp = static_cast<long long>(rng.below(50));
        const double value = tc::balanced_accuracy(c);
        CHECK(value >= 0.0);
        CHECK(value <= 1.0);
        const tc::ConfusionCounts scaled{c.tp * 9, c.tn * 9, c.fp * 9, c.fn * 9};
        CHECK(tc::balanced_accuracy(scaled) == doctest::Approx(value).epsilon(1e-12));
    }
}

TEST_CASE("direction confusion treats ties as the down class") {
    // Actual moves: +1, 0, -2, +3 -> up, down, down, up.
    const std::vector<double> actual{1.0, 2.0, 2.0, 0.0, 3.0};
    // Predicted moves: +1, +1, -1, -1 -> up, up, down, down.
    const std::vector<double> predicted{5.0, 6.0, 7.0, 6.0, 5.0};
    const tc::ConfusionCounts c = tc::direction_confusion(actual, predicted);
    CHECK(c.tp == 1);  // +1 predicted up
    CHECK(c.fp == 1);  // the tie counted down but was predicted up
    CHECK(c.tn == 1);
    CHECK(c.fn == 1);

    CHECK_THROWS_AS(tc::direction_confusion(std::vector<double>{1.0}, std::vector<double>{1.0}),
                    tc::Error);
    CHECK_THROWS_AS(tc::direction_confusion(actual, std::vector<double>{1.0, 2.0}), tc::Error);
}

TEST_CASE("slope uses only the first and last table rows") {
    const std::vector<std::pair<double, double>> table{
        {0.0, 0.0}, {50.0, 99.0}, {100.0, 20.0}};
    CHECK(tc::slope(table) == doctest::Approx(0.2));

    const std::vector<std::pair<double, double>> measured{{0.0, 0.0}, {100000.0, 159.87}};
    CHECK(tc::slope(measured) == doctest::Approx(0.0015987).epsilon(1e-12));

    CHECK_THROWS_AS(tc::slope(std::vector<std::pair<double, double>>{{1.0, 2.0}}), tc::Error);
    CHECK_THROWS_AS(
        tc::slope(std::vector<std::pair<double, double>>{{1.0, 2.0}, {1.0, 5.0}}),
        tc::Error);
}
