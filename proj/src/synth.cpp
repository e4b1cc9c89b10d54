#include "synth.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace tc {

TimeSeries generate_synthetic(const SyntheticSpec& spec, std::size_t n, std::uint64_t seed,
                              double sigma) {
    if (n < 1) {
        throw Error::usage("BadLength", "synthetic series need n >= 1");
    }
    if (sigma < 0.0) {
        throw Error::usage("BadSigma", "sigma must be non-negative");
    }
    Rng rng(seed);
    std::vector<double> values(n, 0.0);
    constexpr double kTwoPi = 6.28318530717958647692;

    switch (spec.kind) {
        case SyntheticKind::white_noise:
            for (double& v : values) {
                v = sigma * rng.normal();
            }
            break;
        case SyntheticKind::random_walk: {
            double level = 0.0;
            for (double& v : values) {
                level += sigma * rng.normal();
                v = level;
            }
            break;
        }
        case SyntheticKind::ar_process: {
            ModelOrder order;
            order.p = static_cast<int>(spec.ar_coeffs.size());
            order.include_constant = false;
            ArimaCoefficients coeffs;
            coeffs.ar = spec.ar_coeffs;
            const TimeSeries sim = simulate(order, coeffs, n, seed, sigma);
            return sim.with_values(sim.values(), "ar_process");
        }
        case SyntheticKind::linear_trend:
            for (std::size_t t = 0; t < n; ++t) {
                values[t] = spec.slope * static_cast<double>(t) + sigma * rng.normal();
            }
            break;
        case SyntheticKind::sine:
            if (spec.period <= 0.0) {
                throw Error::usage("BadLength", "sine period must be positive");
            }
            for (std::size_t t = 0; t < n; ++t) {
                values[t] = spec.amplitude * std::sin(kTwoPi * static_cast<double>(t) / spec.period) +
                            sigma * rng.normal();
            }
            break;
        case SyntheticKind::seasonal_arima: {
            const TimeSeries sim = simulate(spec.order, spec.coeffs, n, seed, sigma);
            return sim.with_values(sim.values(), "seasonal_arima");
        }
    }
    return TimeSeries::from_values(std::move(values), kSyntheticEpochMs, kHourMs, "synthetic");
}

}  // namespace tc
