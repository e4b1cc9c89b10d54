#include "cnn.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <utility>

#include "errors.hpp"
#include "json.hpp"
#include "rng.hpp"

namespace tc {
namespace {

/// Offsets of each layer's weights and biases inside the flat parameter
/// vector; the order is fixed so serialization and Adam state stay aligned.
struct Layout {
    std::size_t w1, b1, w2, b2, wd, bd, wh, bh, total;

    explicit Layout(const CnnConfig& c) {
        const std::size_t f1 = static_cast<std::size_t>(c.conv1_filters);
        const std::size_t f2 = static_cast<std::size_t>(c.conv2_filters);
        const std::size_t k = static_cast<std::size_t>(c.kernel_size);
        const std::size_t units = static_cast<std::size_t>(c.dense_units);
        const std::size_t flat = static_cast<std::size_t>(c.flat_size());
        const std::size_t heads = static_cast<std::size_t>(c.n_heads());
        w1 = 0;
        b1 = w1 + f1 * k;
        w2 = b1 + f1;
        b2 = w2 + f2 * f1 * k;
        wd = b2 + f2;
        bd = wd + units * flat;
        wh = bd + units;
        bh = wh + heads * units;
        total = bh + heads;
    }
};

/// Pre-activation and post-activation values kept for backpropagation.
struct Activations {
    std::vector<double> pre1, a1;  // conv1_filters x conv1_length
    std::vector<double> pre2, a2;  // conv2_filters x conv2_length
    std::vector<double> pre_d, d;  // dense_units
    std::vector<double> pre_o, o;  // n_heads
};

double relu(double x) { return x > 0.0 ? x : 0.0; }

void forward_pass(const CnnConfig& c, const Layout& lay, const std::vector<double>& p,
                  std::span<const double> input, Activations& act) {
    const int f1 = c.conv1_filters;
    const int f2 = c.conv2_filters;
    const int k = c.kernel_size;
    const int l1 = c.conv1_length();
    const int l2 = c.conv2_length();
    const int units = c.dense_units;
    const int flat = c.flat_size();
    const int heads = c.n_heads();

    act.pre1.assign(static_cast<std::size_t>(f1) * l1, 0.0);
    act.a1.assign(act.pre1.size(), 0.0);
    for (int f = 0; f < f1; ++f) {
        const double* w = p.data() + lay.w1 + static_cast<std::size_t>(f) * k;
        const double bias = p[lay.b1 + f];
        for (int i = 0; i < l1; ++i) {
            double sum = bias;
            for (int j = 0; j < k; ++j) { sum += w[j] * input[i + j]; }
            act.pre1[static_cast<std::size_t>(f) * l1 + i] = sum;
            act.a1[static_cast<std::size_t>(f) * l1 + i] = relu(sum);
        }
    }

    act.pre2.assign(static_cast<std::size_t>(f2) * l2, 0.0);
    act.a2.assign(act.pre2.size(), 0.0);
    for (int g = 0; g < f2; ++g) {
        const double* w = p.data() + lay.w2 + static_cast<std::size_t>(g) * f1 * k;
        const double bias = p[lay.b2 + g];
        for (int i = 0; i < l2; ++i) {
            double sum = bias;
            for (int f = 0; f < f1; ++f) {
                const double* a = act.a1.data() + static_cast<std::size_t>(f) * l1 + i;
                const double* wf = w + static_cast<std::size_t>(f) * k;
                for (int j = 0; j < k; ++j) { sum += wf[j] * a[j]; }
            }
            act.pre2[static_cast<std::size_t>(g) * l2 + i] = sum;
            act.a2[static_cast<std::size_t>(g) * l2 + i] = relu(sum);
        }
    }

    act.pre_d.assign(static_cast<std::size_t>(units), 0.0);
    act.d.assign(act.pre_d.size(), 0.0);
    for (int u = 0; u < units; ++u) {
        const double* w = p.data() + lay.wd + static_cast<std::size_t>(u) * flat;
        double sum = p[lay.bd + u];
        for (int j = 0; j < flat; ++j) { sum += w[j] * act.a2[j]; }
        act.pre_d[u] = sum;
        act.d[u] = relu(sum);
    }

    act.pre_o.assign(static_cast<std::size_t>(heads), 0.0);
    act.o.assign(act.pre_o.size(), 0.0);
    for (int h = 0; h < heads; ++h) {
        const double* w = p.data() + lay.wh + static_cast<std::size_t>(h) * units;
        double sum = p[lay.bh + h];
        for (int u = 0; u < units; ++u) { sum += w[u] * act.d[u]; }
        act.pre_o[h] = sum;
        act.o[h] = std::tanh(sum);
    }
}

/// Accumulates d(sample loss)/d(params) scaled by `weight` into `grad`;
/// the sample loss is the squared error averaged over heads.
void backward_pass(const CnnConfig& c, const Layout& lay, const std::vector<double>& p,
                   std::span<const double> input, std::span<const double> targets,
                   const Activations& act, double weight, std::vector<double>& grad) {
    const int f1 = c.conv1_filters;
    const int f2 = c.conv2_filters;
    const int k = c.kernel_size;
    const int l1 = c.conv1_length();
    const int l2 = c.conv2_length();
    const int units = c.dense_units;
    const int flat = c.flat_size();
    const int heads = c.n_heads();

    std::vector<double> delta_d(static_cast<std::size_t>(units), 0.0);
    for (int h = 0; h < heads; ++h) {
        const double err = act.o[h] - targets[h];
        const double dh = weight * (2.0 * err / heads) * (1.0 - act.o[h] * act.o[h]);
        const double* w = p.data() + lay.wh + static_cast<std::size_t>(h) * units;
        double* gw = grad.data() + lay.wh + static_cast<std::size_t>(h) * units;
        for (int u = 0; u < units; ++u) {
            gw[u] += dh * act.d[u];
            delta_d[u] += dh * w[u];
        }
        grad[lay.bh + h] += dh;
    }

    std::vector<double> delta_flat(static_cast<std::size_t>(flat), 0.0);
    for (int u = 0; u < units; ++u) {
        if (act.pre_d[u] <= 0.0) { continue; }
        const double du = delta_d[u];
        const double* w = p.data() + lay.wd + static_cast<std::size_t>(u) * flat;
        double* gw = grad.data() + lay.wd + static_cast<std::size_t>(u) * flat;
        for (int j = 0; j < flat; ++j) {
            gw[j] += du * act.a2[j];
            delta_flat[j] += du * w[j];
        }
        grad[lay.bd + u] += du;
    }

    std::vector<double> delta_a1(static_cast<std::size_t>(f1) * l1, 0.0);
    for (int g = 0; g < f2; ++g) {
        const double* w = p.data() + lay.w2 + static_cast<std::size_t>(g) * f1 * k;
        double* gw = grad.data() + lay.w2 + static_cast<std::size_t>(g) * f1 * k;
        for (int i = 0; i < l2; ++i) {
            if (act.pre2[static_cast<std::size_t>(g) * l2 + i] <= 0.0) { continue; }
            const double dg = delta_flat[static_cast<std::size_t>(g) * l2 + i];
            for (int f = 0; f < f1; ++f) {
                const double* a = act.a1.data() + static_cast<std::size_t>(f) * l1 + i;
                double* da = delta_a1.data() + static_cast<std::size_t>(f) * l1 + i;
                const double* wf = w + static_cast<std::size_t>(f) * k;
                double* gwf = gw + static_cast<std::size_t>(f) * k;
                for (int j = 0; j < k; ++j) {
                    gwf[j] += dg * a[j];
                    da[j] += dg * wf[j];
                }
            }
            grad[lay.b2 + g] += dg;
        }
    }

    for (int f = 0; f < f1; ++f) {
        double* gw = grad.data() + lay.w1 + static_cast<std::size_t>(f) * k;
        for (int i = 0; i < l1; ++i) {
            if (act.pre1[static_cast<std::size_t>(f) * l1 + i] <= 0.0) { continue; }
            const double df = delta_a1[static_cast<std::size_t>(f) * l1 + i];
            for (int j = 0; j < k; ++j) { gw[j] += df * input[i + j]; }
            grad[lay.b1 + f] += df;
        }
    }
}

double sample_loss(const CnnConfig& c, const Activations& act, std::span<const double> targets) {
    double sum = 0.0;
    for (int h = 0; h < c.n_heads(); ++h) {
        const double err = act.o[h] - targets[h];
        sum += err * err;
    }
    return sum / c.n_heads();
}

/// Mean per-sample loss of a trained model over a window set.
double mean_window_loss(const CnnModel& model, const std::vector<WindowSample>& windows) {
    const Layout lay(model.config);
    Activations act;
    double sum = 0.0;
    for (const WindowSample& w : windows) {
        forward_pass(model.config, lay, model.params, w.input, act);
        sum += sample_loss(model.config, act, w.targets);
    }
    return sum / static_cast<double>(windows.size());
}

void fill_scaled_uniform(Rng& rng, std::vector<double>& p, std::size_t offset, std::size_t count,
                         double limit) {
    for (std::size_t i = 0; i < count; ++i) {
        p[offset + i] = (2.0 * rng.uniform() - 1.0) * limit;
    }
}

CnnModel init_model_from(const CnnConfig& config, Rng& rng) {
    const Layout lay(config);
    CnnModel model;
    model.config = config;
    model.params.assign(lay.total, 0.0);
    model.adam_m.assign(lay.total, 0.0);
    model.adam_v.assign(lay.total, 0.0);

    const std::size_t f1 = static_cast<std::size_t>(config.conv1_filters);
    const std::size_t f2 = static_cast<std::size_t>(config.conv2_filters);
    const std::size_t k = static_cast<std::size_t>(config.kernel_size);
    const std::size_t units = static_cast<std::size_t>(config.dense_units);
    const std::size_t flat = static_cast<std::size_t>(config.flat_size());
    const std::size_t heads = static_cast<std::size_t>(config.n_heads());

    // Biases draw from +-1/sqrt(fan_in) so no ReLU pre-activation can sit
    // exactly on the kink, which would otherwise break finite-difference
    // gradient checks on tiny configs with a dead layer.
    fill_scaled_uniform(rng, model.params, lay.w1, f1 * k, std::sqrt(6.0 / static_cast<double>(k)));
    fill_scaled_uniform(rng, model.params, lay.b1, f1, 1.0 / std::sqrt(static_cast<double>(k)));
    fill_scaled_uniform(rng, model.params, lay.w2, f2 * f1 * k,
                        std::sqrt(6.0 / static_cast<double>(f1 * k)));
    fill_scaled_uniform(rng, model.params, lay.b2, f2, 1.0 / std::sqrt(static_cast<double>(f1 * k)));
    fill_scaled_uniform(rng, model.params, lay.wd, units * flat,
                        std::sqrt(6.0 / static_cast<double>(flat)));
    fill_scaled_uniform(rng, model.params, lay.bd, units, 1.0 / std::sqrt(static_cast<double>(flat)));
    fill_scaled_uniform(rng, model.params, lay.wh, heads * units,
                        std::sqrt(6.0 / static_cast<double>(units + 1)));
    fill_scaled_uniform(rng, model.params, lay.bh, heads, 1.0 / std::sqrt(static_cast<double>(units)));
    return model;
}

}  // namespace

void CnnConfig::validate() const {
    if (window < 1 || conv1_filters < 1 || conv2_filters < 1 || kernel_size < 1 ||
        dense_units < 1 || batch_size < 1) {
        throw Error::usage("BadCnnConfig", "layer sizes and batch size must be positive");
    }
    if (epochs < 0) { throw Error::usage("BadCnnConfig", "epochs must be non-negative"); }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw Error::usage("BadCnnConfig", "learning rate must be positive and finite");
    }
    if (window <= 2 * kernel_size) {
        throw Error::usage("BadCnnConfig",
                           "window must exceed twice the kernel size so both convolutions fit");
    }
    if (head_horizons.empty()) {
        throw Error::usage("BadCnnConfig", "at least one head horizon is required");
    }
    for (std::size_t i = 0; i < head_horizons.size(); ++i) {
        if (head_horizons[i] < 1) {
            throw Error::usage("BadCnnConfig", "head horizons must be positive");
        }
        if (i > 0 && head_horizons[i] <= head_horizons[i - 1]) {
            throw Error::usage("BadCnnConfig", "head horizons must be strictly increasing");
        }
    }
}

std::vector<WindowSample> make_windows(std::span<const double> values, const CnnConfig& config) {
    config.validate();
    const int w = config.window;
    const int hmax = config.max_horizon();
    const std::size_t need = static_cast<std::size_t>(w) + hmax;
    if (values.size() < need) {
        throw Error::data("SeriesTooShort",
                          "need at least window + max horizon = " + std::to_string(need) +
                              " values, got " + std::to_string(values.size()));
    }
    const std::size_t count = values.size() - need + 1;
    std::vector<WindowSample> out(count);
    for (std::size_t s = 0; s < count; ++s) {
        out[s].input.assign(values.begin() + s, values.begin() + s + w);
        const std::size_t t = s + w - 1;
        out[s].targets.resize(config.head_horizons.size());
        for (std::size_t h = 0; h < config.head_horizons.size(); ++h) {
            out[s].targets[h] = 2.0 * values[t + config.head_horizons[h]] - 1.0;
        }
    }
    return out;
}

CnnModel init_model(const CnnConfig& config) {
    config.validate();
    Rng rng(config.seed);
    return init_model_from(config, rng);
}

std::vector<double> forward(const CnnModel& model, std::span<const double> input) {
    if (input.size() != static_cast<std::size_t>(model.config.window)) {
        throw Error::usage("ShapeMismatch",
                           "input length " + std::to_string(input.size()) +
                               " does not match window " + std::to_string(model.config.window));
    }
    const Layout lay(model.config);
    Activations act;
    forward_pass(model.config, lay, model.params, input, act);
    return act.o;
}

std::pair<CnnModel, TrainReport> train(const TimeSeries& normalized, const CnnConfig& config,
                                       const TimeSeries* validation) {
    const auto started = std::chrono::steady_clock::now();
    const std::vector<WindowSample> windows = make_windows(normalized.values(), config);
    const Layout lay(config);
    // One generator drives both the weight draws and every epoch shuffle,
    // so the full run is a deterministic function of the seed.
    Rng rng(config.seed);
    CnnModel model = init_model_from(config, rng);

    TrainReport report;
    std::vector<std::size_t> order(windows.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad(lay.total, 0.0);
    Activations act;
    const double beta1 = 0.9;
    const double beta2 = 0.999;
    const double adam_eps = 1e-8;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_sum = 0.0;
        for (std::size_t start = 0; start < order.size();
             start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t end =
                std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
            const double inv_batch = 1.0 / static_cast<double>(end - start);
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0.0;
            for (std::size_t s = start; s < end; ++s) {
                const WindowSample& w = windows[order[s]];
                forward_pass(config, lay, model.params, w.input, act);
                batch_loss += inv_batch * sample_loss(config, act, w.targets);
                backward_pass(config, lay, model.params, w.input, w.targets, act, inv_batch, grad);
            }
            if (!std::isfinite(batch_loss)) {
                throw Error::numeric("DivergedLoss", "training loss became non-finite");
            }
            epoch_sum += batch_loss * static_cast<double>(end - start);

            model.adam_step += 1;
            const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(model.adam_step));
            const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(model.adam_step));
            for (std::size_t i = 0; i < lay.total; ++i) {
                model.adam_m[i] = beta1 * model.adam_m[i] + (1.0 - beta1) * grad[i];
                model.adam_v[i] = beta2 * model.adam_v[i] + (1.0 - beta2) * grad[i] * grad[i];
                const double mhat = model.adam_m[i] / bc1;
                const double vhat = model.adam_v[i] / bc2;
                model.params[i] -= config.learning_rate * mhat / (std::sqrt(vhat) + adam_eps);
                if (!std::isfinite(model.params[i])) {
                    throw Error::numeric("DivergedLoss", "model weights became non-finite");
                }
            }
        }
        report.epoch_mse.push_back(epoch_sum / static_cast<double>(order.size()));
    }

    if (validation != nullptr &&
        validation->size() >= static_cast<std::size_t>(config.window) + config.max_horizon()) {
        report.validation_mse = mean_window_loss(model, make_windows(validation->values(), config));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return {std::move(model), std::move(report)};
}

std::vector<double> predict_series(const CnnModel& model, std::span<const double> values,
                                   int horizon) {
    if (horizon < 1) { throw Error::usage("BadHorizon", "horizon must be at least 1"); }
    if (horizon > model.config.max_horizon()) {
        throw Error::usage("HorizonExceedsHeads",
                           "horizon " + std::to_string(horizon) + " exceeds largest head horizon " +
                               std::to_string(model.config.max_horizon()));
    }
    const std::size_t w = static_cast<std::size_t>(model.config.window);
    if (values.size() < w) {
        throw Error::data("SeriesTooShort", "need at least one full window to predict");
    }
    const std::vector<double> outputs = forward(model, values.subspan(values.size() - w, w));
    std::vector<double> pred(static_cast<std::size_t>(horizon));
    for (int h = 1; h <= horizon; ++h) {
        std::size_t head = 0;
        while (model.config.head_horizons[head] < h) { ++head; }
        pred[h - 1] = (outputs[head] + 1.0) / 2.0;
    }
    return pred;
}

double grad_check(const CnnConfig& config, std::span<const double> input,
                  std::span<const double> targets, double epsilon) {
    config.validate();
    if (input.size() != static_cast<std::size_t>(config.window) ||
        targets.size() != static_cast<std::size_t>(config.n_heads())) {
        throw Error::usage("ShapeMismatch", "input must match window and targets must match heads");
    }
    if (!(epsilon > 0.0)) { throw Error::usage("BadEpsilon", "epsilon must be positive"); }
    CnnModel model = init_model(config);
    const Layout lay(config);
    Activations act;

    forward_pass(config, lay, model.params, input, act);
    std::vector<double> analytic(lay.total, 0.0);
    backward_pass(config, lay, model.params, input, targets, act, 1.0, analytic);

    auto loss_at = [&](const std::vector<double>& p) {
        forward_pass(config, lay, p, input, act);
        return sample_loss(config, act, targets);
    };
    double worst = 0.0;
    std::vector<double> perturbed = model.params;
    for (std::size_t i = 0; i < lay.total; ++i) {
        const double saved = perturbed[i];
        perturbed[i] = saved + epsilon;
        const double up = loss_at(perturbed);
        perturbed[i] = saved - epsilon;
        const double down = loss_at(perturbed);
        perturbed[i] = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
        worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
    }
    return worst;
}

std::string model_to_json(const CnnModel& model) {
    const CnnConfig& c = model.config;
    const Layout lay(c);
    nlohmann::json j;
    j["format"] = "cnn-weights";
    j["version"] = 1;
    j["config"] = {{"window", c.window},
                   {"conv1_filters", c.conv1_filters},
                   {"conv2_filters", c.conv2_filters},
                   {"kernel_size", c.kernel_size},
                   {"dense_units", c.dense_units},
                   {"head_horizons", c.head_horizons},
                   {"learning_rate", c.learning_rate},
                   {"batch_size", c.batch_size},
                   {"epochs", c.epochs},
                   {"seed", c.seed}};
    auto slice = [&](std::size_t off, std::size_t len) {
        return std::vector<double>(model.params.begin() + off, model.params.begin() + off + len);
    };
    j["layers"] = {
        {{"name", "conv1"},
         {"shape", {c.conv1_filters, c.kernel_size}},
         {"weights", slice(lay.w1, lay.b1 - lay.w1)},
         {"biases", slice(lay.b1, lay.w2 - lay.b1)}},
        {{"name", "conv2"},
         {"shape", {c.conv2_filters, c.conv1_filters, c.kernel_size}},
         {"weights", slice(lay.w2, lay.b2 - lay.w2)},
         {"biases", slice(lay.b2, lay.wd - lay.b2)}},
        {{"name", "dense"},
         {"shape", {c.dense_units, c.flat_size()}},
         {"weights", slice(lay.wd, lay.bd - lay.wd)},
         {"biases", slice(lay.bd, lay.wh - lay.bd)}},
        {{"name", "heads"},
         {"shape", {c.n_heads(), c.dense_units}},
         {"weights", slice(lay.wh, lay.bh - lay.wh)},
         {"biases", slice(lay.bh, lay.total - lay.bh)}},
    };
    j["adam"] = {{"step", model.adam_step}, {"m", model.adam_m}, {"v", model.adam_v}};
    return j.dump(2);
}

CnnModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error::data("BadModelJson", std::string("cannot parse model JSON: ") + e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "cnn-weights" || j.at("version").get<int>() != 1) {
            throw Error::data("BadModelJson", "unknown model format or version");
        }
        const nlohmann::json& cj = j.at("config");
        CnnConfig c;
        c.window = cj.at("window").get<int>();
        c.conv1_filters = cj.at("conv1_filters").get<int>();
        c.conv2_filters = cj.at("conv2_filters").get<int>();
        c.kernel_size = cj.at("kernel_size").get<int>();
        c.dense_units = cj.at("dense_units").get<int>();
        c.head_horizons = cj.at("head_horizons").get<std::vector<int>>();
        c.learning_rate = cj.at("learning_rate").get<double>();
        c.batch_size = cj.at("batch_size").get<int>();
        c.epochs = cj.at("epochs").get<int>();
        c.seed = cj.at("seed").get<std::uint64_t>();
        c.validate();

        const Layout lay(c);
        CnnModel model;
        model.config = c;
        model.params.assign(lay.total, 0.0);
        const std::array<std::pair<std::size_t, std::size_t>, 8> spans = {{
            {lay.w1, lay.b1 - lay.w1},
            {lay.b1, lay.w2 - lay.b1},
            {lay.w2, lay.b2 - lay.w2},
            {lay.b2, lay.wd - lay.b2},
            {lay.wd, lay.bd - lay.wd},
            {lay.bd, lay.wh - lay.bd},
            {lay.wh, lay.bh - lay.wh},
            {lay.bh, lay.total - lay.bh},
        }};
        const nlohmann::json& layers = j.at("layers");
        if (!layers.is_array() || layers.size() != 4) {
            throw Error::data("BadModelJson", "expected four layer entries");
        }
        for (std::size_t l = 0; l < 4; ++l) {
            const auto weights = layers[l].at("weights").get<std::vector<double>>();
            const auto biases = layers[l].at("biases").get<std::vector<double>>();
            if (weights.size() != spans[2 * l].second || biases.size() != spans[2 * l + 1].second) {
                throw Error::data("BadModelJson", "layer sizes do not match the configuration");
            }
            std::copy(weights.begin(), weights.end(), model.params.begin() + spans[2 * l].first);
            std::copy(biases.begin(), biases.end(), model.params.begin() + spans[2 * l + 1].first);
        }
        const nlohmann::json& adam = j.at("adam");
        model.adam_step = adam.at("step").get<std::int64_t>();
        model.adam_m = adam.at("m").get<std::vector<double>>();
        model.adam_v = adam.at("v").get<std::vector<double>>();
        if (model.adam_m.size() != lay.total || model.adam_v.size() != lay.total) {
            throw Error::data("BadModelJson", "optimizer state does not match the configuration");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw Error::data("BadModelJson", std::string("model JSON missing fields: ") + e.what());
    }
}

}  // namespace tc
