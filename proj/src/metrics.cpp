#include "metrics.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "errors.hpp"

namespace tc {
namespace {

void require_paired(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error::usage("LengthMismatch", "actual and predicted lengths differ: " +
                                                 std::to_string(actual.size()) + " vs " +
                                                 std::to_string(predicted.size()));
    }
    if (actual.empty()) { throw Error::usage("Empty", "need at least one pair"); }
}

}  // namespace

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    require_paired(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(actual.size()));
}

double mape(std::span<const double> actual, std::span<const double> predicted) {
    require_paired(actual, predicted);
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            throw Error::data("ZeroActual", "actual value at index " + std::to_string(i) +
                                                " is zero; percentage error is undefined");
        }
        sum += std::abs(actual[i] - predicted[i]) / std::abs(actual[i]);
    }
    return 100.0 * sum / static_cast<double>(actual.size());
}

double balanced_accuracy(const ConfusionCounts& c) {
    if (c.tp + c.fn < 1 || c.tn + c.fp < 1) {
        throw Error::data("EmptyClass",
                          "both classes need at least one member to balance sensitivity "
                          "and specificity");
    }
    // Single division: textbook cases like (90, 80, 20, 10) come out exactly
    // (0.85), where averaging two rounded ratios would drift by one ulp.
    const double positives = static_cast<double>(c.tp + c.fn);
    const double negatives = static_cast<double>(c.tn + c.fp);
    return (static_cast<double>(c.tp) * negatives + static_cast<double>(c.tn) * positives) /
           (2.0 * positives * negatives);
}

ConfusionCounts direction_confusion(std::span<const double> actual,
                                    std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error::usage("LengthMismatch", "actual and predicted lengths differ");
    }
    if (actual.size() < 2) {
        throw Error::data("TooShort", "need at least two points to compare directions");
    }
    ConfusionCounts c;
    for (std::size_t i = 1; i < actual.size(); ++i) {
        const bool actual_up = actual[i] - actual[i - 1] > 0.0;
        const bool predicted_up = predicted[i] - predicted[i - 1] > 0.0;
        if (actual_up && predicted_up) {
            c.tp += 1;
        } else if (actual_up) {
            c.fn += 1;
        } else if (predicted_up) {
            c.fp += 1;
        } else {
            c.tn += 1;
        }
    }
    return c;
}

double slope(std::span<const std::pair<double, double>> table) {
    if (table.size() < 2) { throw Error::usage("TooShort", "need at least two table rows"); }
    const double dx = table.back().first - table.front().first;
    if (dx == 0.0) {
        throw Error::usage("DegenerateX", "first and last x values coincide");
    }
    return (table.back().second - table.front().second) / dx;
}

}  // namespace tc
