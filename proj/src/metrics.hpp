#pragma once

#include <span>
#include <utility>

namespace tc {

struct ConfusionCounts {
    long long tp = 0;
    long long tn = 0;
    long long fp = 0;
    long long fn = 0;
};

/// Root mean squared error. Error kinds: LengthMismatch, Empty.
double rmse(std::span<const double> actual, std::span<const double> predicted);

/// Mean absolute percentage error, 100/n * sum |a-p|/|a|. Error kinds:
/// LengthMismatch, Empty, ZeroActual (message names the offending index).
double mape(std::span<const double> actual, std::span<const double> predicted);

/// Mean of sensitivity and specificity. Error kind: EmptyClass.
double balanced_accuracy(const ConfusionCounts& c);

/// Direction-of-change confusion over consecutive steps: a strictly
/// positive actual move is the positive class and ties count as down, so a
/// regression forecast can be scored like a classifier. Error kinds:
/// LengthMismatch, TooShort.
ConfusionCounts direction_confusion(std::span<const double> actual,
                                    std::span<const double> predicted);

/// Average rate of change between the first and last table rows. Error
/// kinds: TooShort, DegenerateX.
double slope(std::span<const std::pair<double, double>> table);

}  // namespace tc
