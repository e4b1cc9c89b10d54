#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "series.hpp"

namespace tc {

/// Hyperparameters of the 1-D convolutional forecaster: two valid-padding
/// convolution layers with ReLU, one ReLU dense layer, and one
/// tanh-bounded scalar head per forecast horizon.
struct CnnConfig {
    int window = 14;
    int conv1_filters = 70;
    int conv2_filters = 30;
    int kernel_size = 3;
    int dense_units = 50;
    std::vector<int> head_horizons = {1, 3, 6, 9, 12, 14};
    double learning_rate = 0.001;
    int batch_size = 2;
    int epochs = 50;
    std::uint64_t seed = 0;

    void validate() const;

    int n_heads() const { return static_cast<int>(head_horizons.size()); }
    int conv1_length() const { return window - kernel_size + 1; }
    int conv2_length() const { return conv1_length() - kernel_size + 1; }
    int flat_size() const { return conv2_filters * conv2_length(); }
    int max_horizon() const { return head_horizons.back(); }
};

/// All parameters live in one flat vector (conv1 weights, conv1 biases,
/// conv2 weights, conv2 biases, dense weights, dense biases, head weights,
/// head biases, row-major) so the Adam state mirrors it elementwise.
struct CnnModel {
    CnnConfig config;
    std::vector<double> params;
    std::vector<double> adam_m;
    std::vector<double> adam_v;
    std::int64_t adam_step = 0;
};

struct TrainReport {
    std::vector<double> epoch_mse;
    std::optional<double> validation_mse;
    double wall_seconds = 0.0;
};

struct WindowSample {
    std::vector<double> input;    // `window` normalized values
    std::vector<double> targets;  // per head, rescaled to [-1, 1] via 2v - 1
};

/// Stride-1 sliding windows over a [0,1]-normalized series; the window
/// ending at index t targets the values at t + horizon for each head.
/// Error kind: SeriesTooShort (length < window + max horizon).
std::vector<WindowSample> make_windows(std::span<const double> values, const CnnConfig& config);

/// Seeded scaled-uniform initialization: He bounds for the ReLU layers,
/// Xavier bounds for the tanh heads, zero biases.
CnnModel init_model(const CnnConfig& config);

/// Head outputs in [-1, 1]. Error kind: ShapeMismatch.
std::vector<double> forward(const CnnModel& model, std::span<const double> input);

/// Mini-batch Adam training (beta1 0.9, beta2 0.999, eps 1e-8) with a
/// seeded shuffle each epoch; the loss is the squared error averaged over
/// heads and batch. When a validation series long enough for one window is
/// given, its mean window loss is reported. Error kinds: SeriesTooShort,
/// DivergedLoss.
std::pair<CnnModel, TrainReport> train(const TimeSeries& normalized, const CnnConfig& config,
                                       const TimeSeries* validation = nullptr);

/// Multi-step prediction from the last window: step h uses the head with
/// the smallest horizon >= h, mapped back to [0,1] via (v+1)/2. Error
/// kinds: SeriesTooShort, BadHorizon, HorizonExceedsHeads.
std::vector<double> predict_series(const CnnModel& model, std::span<const double> values,
                                   int horizon);

/// Maximum relative disagreement between analytic and central
/// finite-difference gradients of the single-sample loss,
/// |a - f| / max(|a|, |f|, 1e-8), over every parameter.
double grad_check(const CnnConfig& config, std::span<const double> input,
                  std::span<const double> targets, double epsilon = 1e-5);

/// JSON round trip with a version header and layer shapes; doubles keep
/// full precision.
std::string model_to_json(const CnnModel& model);
CnnModel model_from_json(const std::string& text);

}  // namespace tc
