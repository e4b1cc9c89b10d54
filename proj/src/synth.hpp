#pragma once

#include <cstdint>
#include <vector>

#include "arima.hpp"
#include "series.hpp"

namespace tc {

enum class SyntheticKind {
    white_noise,
    random_walk,
    ar_process,
    linear_trend,
    sine,
    seasonal_arima,
};

/// Parameters for one synthetic series; only the fields for the chosen
/// kind are read.
struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::white_noise;
    std::vector<double> ar_coeffs;  // ar_process
    double slope = 1.0;             // linear_trend
    double period = 24.0;           // sine
    double amplitude = 1.0;         // sine
    ModelOrder order;               // seasonal_arima
    ArimaCoefficients coeffs;       // seasonal_arima
};

/// Deterministic seeded series on the hourly grid starting at the fixed
/// epoch. `sigma` scales the Gaussian noise (exact deterministic shape
/// when 0). AR-style kinds discard a 100-sample burn-in. Error kinds:
/// BadLength, NonStationaryCoefficients.
TimeSeries generate_synthetic(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed,
                              double sigma);

}  // namespace tc
