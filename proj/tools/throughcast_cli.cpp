// Command-line front end. All engine access goes through the shared C API
// so this binary exercises exactly the surface any other embedder sees.

#include "throughcast.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CliFailure {
    int code;
};

[[noreturn]] void fail_usage(const std::string& message) {
    std::fprintf(stderr, "error [BadFlag]: %s\n", message.c_str());
    throw CliFailure{1};
}

void require_ok(tc_status status) {
    if (status != TC_OK) {
        std::fprintf(stderr, "error [%s]: %s\n", tc_last_error_kind(), tc_last_error());
        throw CliFailure{static_cast<int>(status)};
    }
}

// RAII for strings and handles returned by the C API.
struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { tc_string_free(s); }
    std::string str() const { return s == nullptr ? std::string() : std::string(s); }
};

struct OwnedSeries {
    tc_series* p = nullptr;
    ~OwnedSeries() { tc_series_free(p); }
};

struct OwnedFit {
    tc_fit* p = nullptr;
    ~OwnedFit() { tc_fit_free(p); }
};

struct OwnedTrace {
    tc_trace* p = nullptr;
    ~OwnedTrace() { tc_trace_free(p); }
};

struct OwnedForecast {
    tc_forecast* p = nullptr;
    ~OwnedForecast() { tc_forecast_free(p); }
};

struct OwnedPca {
    tc_pca* p = nullptr;
    ~OwnedPca() { tc_pca_free(p); }
};

int repair_mode(const std::string& repair) {
    if (repair.empty()) {
        return 0;
    }
    if (repair == "ffill") {
        return 1;
    }
    fail_usage("unsupported --repair mode '" + repair + "' (only 'ffill' is available)");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag.has_value()) {
        return *flag;
    }
    if (const char* env = std::getenv("THROUGHCAST_SEED")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            fail_usage("THROUGHCAST_SEED is not an unsigned integer: '" + std::string(env) + "'");
        }
        return static_cast<std::uint64_t>(value);
    }
    return 0;
}

tc_order make_order(const std::vector<int>& order, const std::vector<int>& seasonal,
                    bool no_intercept) {
    if (order.size() != 3) {
        fail_usage("--order expects three comma-separated integers p,d,q");
    }
    if (!seasonal.empty() && seasonal.size() != 4) {
        fail_usage("--seasonal expects four comma-separated integers P,D,Q,m");
    }
    tc_order out{};
    out.p = order[0];
    out.d = order[1];
    out.q = order[2];
    if (seasonal.size() == 4) {
        out.seasonal_p = seasonal[0];
        out.seasonal_d = seasonal[1];
        out.seasonal_q = seasonal[2];
        out.seasonal_period = seasonal[3];
    }
    out.include_constant = no_intercept ? 0 : 1;
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error [FileWrite]: cannot open %s for writing\n",
                     path.string().c_str());
        throw CliFailure{2};
    }
    out << text;
    if (!out) {
        std::fprintf(stderr, "error [FileWrite]: short write to %s\n", path.string().c_str());
        throw CliFailure{2};
    }
}

fs::path ensure_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "error [FileWrite]: cannot create directory %s: %s\n",
                     dir.string().c_str(), ec.message().c_str());
        throw CliFailure{2};
    }
    return dir;
}

// Inserts the seed into a JSON report so machine consumers see the same
// header information as the text reports.
std::string with_seed(const std::string& json_text, std::uint64_t seed) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    j["seed"] = seed;
    return j.dump(2);
}

struct CommonOpts {
    std::string input;
    std::string column = "Tpt_in";
    std::string repair;
    std::string format = "text";
    std::string out_dir = ".";
};

void add_input_flags(CLI::App* cmd, CommonOpts& opts, bool input_required) {
    auto* in = cmd->add_option("--input", opts.input, "Subscriber CSV file");
    if (input_required) {
        in->required();
    }
    cmd->add_option("--column", opts.column, "Throughput column (Tpt_in or Tpt_out)")
        ->default_val("Tpt_in");
    cmd->add_option("--repair", opts.repair,
                    "Gap handling: 'ffill' forward-fills missing hours (default: reject gaps)");
}

tc_series* load_input(const CommonOpts& opts) {
    tc_series* s = nullptr;
    require_ok(tc_series_load_csv(opts.input.c_str(), opts.column.c_str(),
                                  repair_mode(opts.repair), &s));
    return s;
}

int run_stats(const CommonOpts& opts) {
    OwnedString report;
    OwnedString correlogram;
    OwnedString qq;
    int constant_flag = 0;
    require_ok(tc_stats_report(opts.input.c_str(), opts.column.c_str(),
                               repair_mode(opts.repair), opts.format == "json" ? 1 : 0,
                               &report.s, &correlogram.s, &qq.s, &constant_flag));
    const fs::path dir = ensure_out_dir(opts.out_dir);
    write_file(dir / "correlogram.csv", correlogram.str());
    write_file(dir / "qq.csv", qq.str());
    std::fputs(report.s, stdout);
    if (opts.format != "json") {
        std::fputc('\n', stdout);
    }
    if (constant_flag != 0) {
        std::fprintf(stderr, "warning: column %s is constant; unit-root test skipped\n",
                     opts.column.c_str());
    }
    return 0;
}

int run_fit(const CommonOpts& opts, const std::vector<int>& order,
            const std::vector<int>& seasonal, bool no_intercept, int k_parts) {
    const tc_order model_order = make_order(order, seasonal, no_intercept);
    OwnedSeries series{load_input(opts)};
    OwnedFit fit;
    if (k_parts >= 2) {
        require_ok(tc_fit_series_partitioned(series.p, &model_order, k_parts, &fit.p));
    } else {
        require_ok(tc_fit_series(series.p, &model_order, &fit.p));
    }
    OwnedString summary;
    require_ok(tc_fit_summary(fit.p, opts.format == "json" ? 1 : 0, &summary.s));
    std::fputs(summary.s, stdout);
    std::fputc('\n', stdout);
    return 0;
}

int run_auto(const CommonOpts& opts, int d, int max_p, int max_q) {
    OwnedSeries series{load_input(opts)};
    OwnedTrace trace;
    require_ok(tc_auto_search(series.p, d, max_p, max_q, &trace.p));
    if (opts.format == "json") {
        tc_order best{};
        require_ok(tc_trace_best_order(trace.p, &best));
        OwnedFit best_fit;
        require_ok(tc_trace_best_fit(trace.p, &best_fit.p));
        OwnedString text;
        require_ok(tc_trace_text(trace.p, &text.s));
        nlohmann::json j;
        j["best_order"] = {{"p", best.p},
                           {"d", best.d},
                           {"q", best.q},
                           {"seasonal_p", best.seasonal_p},
                           {"seasonal_d", best.seasonal_d},
                           {"seasonal_q", best.seasonal_q},
                           {"seasonal_period", best.seasonal_period},
                           {"include_constant", best.include_constant != 0}};
        j["aic"] = tc_fit_aic(best_fit.p);
        j["log_likelihood"] = tc_fit_log_likelihood(best_fit.p);
        j["trace_text"] = text.str();
        std::fputs(j.dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        OwnedString text;
        require_ok(tc_trace_text(trace.p, &text.s));
        std::fputs("Performing stepwise search to minimize aic\n", stdout);
        std::fputs(text.s, stdout);
    }
    return 0;
}

int run_forecast(const CommonOpts& opts, const std::vector<int>& order,
                 const std::vector<int>& seasonal, bool no_intercept, int horizon) {
    const tc_order model_order = make_order(order, seasonal, no_intercept);
    OwnedSeries series{load_input(opts)};
    OwnedFit fit;
    require_ok(tc_fit_series(series.p, &model_order, &fit.p));
    OwnedForecast forecast;
    require_ok(tc_forecast_make(fit.p, series.p, horizon, &forecast.p));
    OwnedString table_csv;
    require_ok(tc_forecast_table(forecast.p, 0, &table_csv.s));
    OwnedString table_json;
    require_ok(tc_forecast_table(forecast.p, 1, &table_json.s));
    OwnedString fitted;
    require_ok(tc_fitted_csv(fit.p, series.p, &fitted.s));
    const fs::path dir = ensure_out_dir(opts.out_dir);
    write_file(dir / "forecast.csv", table_csv.str());
    write_file(dir / "forecast.json", table_json.str());
    write_file(dir / "fitted.csv", fitted.str());
    if (opts.format == "json") {
        std::fputs(table_json.s, stdout);
        std::fputc('\n', stdout);
    } else {
        std::fputs(table_csv.s, stdout);
    }
    std::fprintf(stderr, "wrote forecast.csv, forecast.json, fitted.csv to %s\n",
                 dir.string().c_str());
    return 0;
}

int run_compare(const CommonOpts& opts, const std::vector<int>& order,
                const std::vector<int>& seasonal, bool no_intercept, int cnn_epochs,
                const std::optional<std::uint64_t>& seed_flag) {
    const tc_order model_order = make_order(order, seasonal, no_intercept);
    const std::uint64_t seed = resolve_seed(seed_flag);
    OwnedSeries series{load_input(opts)};
    OwnedString report;
    require_ok(tc_compare(series.p, &model_order, cnn_epochs, seed,
                          opts.format == "json" ? 1 : 0, &report.s));
    if (opts.format == "json") {
        std::fputs(with_seed(report.str(), seed).c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        std::fprintf(stdout, "seed = %llu\n", static_cast<unsigned long long>(seed));
        std::fputs(report.s, stdout);
    }
    return 0;
}

int run_bench(const std::string& format, const std::string& out_dir,
              const std::vector<std::size_t>& rows, int cnn_epochs,
              const std::optional<std::uint64_t>& seed_flag) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    int format_code = 0;
    if (format == "csv") {
        format_code = 1;
    } else if (format == "json") {
        format_code = 2;
    }
    OwnedString table;
    require_ok(tc_bench(rows.data(), rows.size(), seed, cnn_epochs, format_code, &table.s));
    OwnedString csv;
    if (format_code == 1) {
        csv.s = nullptr;
    } else {
        require_ok(tc_bench(rows.data(), rows.size(), seed, cnn_epochs, 1, &csv.s));
    }
    const fs::path dir = ensure_out_dir(out_dir);
    write_file(dir / "speed.csv", format_code == 1 ? table.str() : csv.str());
    if (format == "json") {
        std::fputs(with_seed(table.str(), seed).c_str(), stdout);
        std::fputc('\n', stdout);
    } else if (format == "csv") {
        std::fprintf(stderr, "seed = %llu\n", static_cast<unsigned long long>(seed));
        std::fputs(table.s, stdout);
    } else {
        std::fprintf(stdout, "seed = %llu\n", static_cast<unsigned long long>(seed));
        std::fputs(table.s, stdout);
    }
    return 0;
}

int run_plotdata(const CommonOpts& opts, const std::string& what, bool have_input) {
    OwnedString csv;
    require_ok(tc_plotdata(what.c_str(), have_input ? opts.input.c_str() : nullptr,
                           opts.column.c_str(), repair_mode(opts.repair), opts.out_dir.c_str(),
                           &csv.s));
    std::fputs(csv.s, stdout);
    return 0;
}

int run_synth(const std::string& kind, const std::string& spec_json, std::size_t n, double sigma,
              const std::vector<double>& ar, const std::vector<double>& ma,
              const std::vector<double>& sar, const std::vector<double>& sma,
              const std::optional<double>& constant, const std::vector<int>& order_flag,
              const std::vector<int>& seasonal_flag, double slope, double period,
              double amplitude, const std::string& format, const std::string& out_dir,
              const std::string& output, const std::optional<std::uint64_t>& seed_flag) {
    const std::uint64_t seed = resolve_seed(seed_flag);
    std::string spec = spec_json;
    if (spec.empty()) {
        if (kind.empty()) {
            fail_usage("synth needs --kind or --spec-json");
        }
        nlohmann::json j;
        j["kind"] = kind;
        if (kind == "ar_process") {
            if (ar.empty()) {
                fail_usage("--kind ar_process needs --ar coefficients");
            }
            j["ar_coeffs"] = ar;
        } else if (kind == "linear_trend") {
            j["slope"] = slope;
        } else if (kind == "sine") {
            j["period"] = period;
            j["amplitude"] = amplitude;
        } else if (kind == "seasonal_arima") {
            if (order_flag.size() != 3) {
                fail_usage("--kind seasonal_arima needs --order p,d,q");
            }
            std::vector<int> full = order_flag;
            if (seasonal_flag.size() == 4) {
                full.insert(full.end(), seasonal_flag.begin(), seasonal_flag.end());
            } else if (seasonal_flag.empty()) {
                full.insert(full.end(), {0, 0, 0, 0});
            } else {
                fail_usage("--seasonal expects four comma-separated integers P,D,Q,m");
            }
            j["order"] = full;
            if (!ar.empty()) {
                j["ar"] = ar;
            }
            if (!ma.empty()) {
                j["ma"] = ma;
            }
            if (!sar.empty()) {
                j["sar"] = sar;
            }
            if (!sma.empty()) {
                j["sma"] = sma;
            }
            if (constant.has_value()) {
                j["constant"] = *constant;
            }
        }
        spec = j.dump();
    }
    OwnedSeries series;
    require_ok(tc_series_synth(spec.c_str(), n, seed, sigma, &series.p));
    const fs::path dir = ensure_out_dir(out_dir);
    const fs::path path = output.empty() ? dir / "synth.csv" : fs::path(output);
    require_ok(tc_series_write_csv(series.p, path.string().c_str()));
    if (format == "json") {
        nlohmann::json j;
        j["rows"] = tc_series_size(series.p);
        j["path"] = path.string();
        j["seed"] = seed;
        std::fputs(j.dump(2).c_str(), stdout);
        std::fputc('\n', stdout);
    } else {
        std::fprintf(stdout, "wrote %zu rows to %s (seed = %llu)\n", tc_series_size(series.p),
                     path.string().c_str(), static_cast<unsigned long long>(seed));
    }
    return 0;
}

int run_pca(const std::string& input, int components, const std::string& format,
            const std::string& out_dir) {
    OwnedPca pca;
    require_ok(tc_pca_fit_csv(input.c_str(), &pca.p));
    const int n_features = static_cast<int>(tc_pca_n_features(pca.p));
    const int k = components > 0 ? components : n_features;
    OwnedString model_json;
    require_ok(tc_pca_model_json(pca.p, &model_json.s));
    OwnedString transformed;
    require_ok(tc_pca_transform_csv(pca.p, input.c_str(), k, &transformed.s));
    OwnedString explained;
    require_ok(tc_pca_explained_json(pca.p, &explained.s));
    const fs::path dir = ensure_out_dir(out_dir);
    write_file(dir / "pca_model.json", model_json.str());
    write_file(dir / "pca_transformed.csv", transformed.str());
    if (format == "json") {
        std::fputs(explained.s, stdout);
        std::fputc('\n', stdout);
    } else {
        const nlohmann::json j = nlohmann::json::parse(explained.str());
        int index = 1;
        for (const auto& ratio : j.at("explained_variance")) {
            std::fprintf(stdout, "PC%-3d explained variance ratio = %.6f\n", index,
                         ratio.get<double>());
            ++index;
        }
    }
    std::fprintf(stderr, "wrote pca_model.json, pca_transformed.csv to %s\n",
                 dir.string().c_str());
    return 0;
}

int run_dedupe(const std::string& input, const std::string& output, const std::string& out_dir) {
    const fs::path dir = ensure_out_dir(out_dir);
    const fs::path path = output.empty() ? dir / "deduped.csv" : fs::path(output);
    OwnedString summary;
    require_ok(tc_dedupe_csv(input.c_str(), path.string().c_str(), &summary.s));
    std::fprintf(stdout, "%s\n", summary.s);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"throughcast: network-throughput forecasting toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tc_version());

    CommonOpts stats_opts;
    auto* cmd_stats = app.add_subcommand("stats", "Dataset summary, distribution tests, ACF/Q-Q data");
    add_input_flags(cmd_stats, stats_opts, true);
    cmd_stats->add_option("--format", stats_opts.format)->check(CLI::IsMember({"text", "json"}));
    cmd_stats->add_option("--out-dir", stats_opts.out_dir, "Directory for correlogram.csv and qq.csv");

    CommonOpts fit_opts;
    std::vector<int> fit_order;
    std::vector<int> fit_seasonal;
    bool fit_no_intercept = false;
    int fit_k_parts = 1;
    auto* cmd_fit = app.add_subcommand("fit", "Fit one model order and print the summary");
    add_input_flags(cmd_fit, fit_opts, true);
    cmd_fit->add_option("--order", fit_order, "p,d,q")->delimiter(',')->required();
    cmd_fit->add_option("--seasonal", fit_seasonal, "P,D,Q,m")->delimiter(',');
    cmd_fit->add_flag("--no-intercept", fit_no_intercept, "Drop the constant term");
    cmd_fit->add_option("--k-parts", fit_k_parts, "Fit on k contiguous parts and average");
    cmd_fit->add_option("--format", fit_opts.format)->check(CLI::IsMember({"text", "json"}));

    CommonOpts auto_opts;
    int auto_d = -1;
    int auto_max_p = 5;
    int auto_max_q = 5;
    auto* cmd_auto = app.add_subcommand("auto", "Stepwise AIC order search");
    add_input_flags(cmd_auto, auto_opts, true);
    cmd_auto->add_option("--d", auto_d, "Fix the differencing order (default: unit-root test)");
    cmd_auto->add_option("--max-p", auto_max_p);
    cmd_auto->add_option("--max-q", auto_max_q);
    cmd_auto->add_option("--format", auto_opts.format)->check(CLI::IsMember({"text", "json"}));

    CommonOpts forecast_opts;
    std::vector<int> forecast_order;
    std::vector<int> forecast_seasonal;
    bool forecast_no_intercept = false;
    int forecast_horizon = 24;
    auto* cmd_forecast = app.add_subcommand("forecast", "Fit, then forecast future hours");
    add_input_flags(cmd_forecast, forecast_opts, true);
    cmd_forecast->add_option("--order", forecast_order, "p,d,q")->delimiter(',')->required();
    cmd_forecast->add_option("--seasonal", forecast_seasonal, "P,D,Q,m")->delimiter(',');
    cmd_forecast->add_flag("--no-intercept", forecast_no_intercept);
    cmd_forecast->add_option("--horizon", forecast_horizon)->check(CLI::PositiveNumber);
    cmd_forecast->add_option("--format", forecast_opts.format)
        ->check(CLI::IsMember({"text", "json"}));
    cmd_forecast->add_option("--out-dir", forecast_opts.out_dir,
                             "Directory for forecast.csv, forecast.json, fitted.csv");

    CommonOpts compare_opts;
    std::vector<int> compare_order{2, 0, 2};
    std::vector<int> compare_seasonal;
    bool compare_no_intercept = false;
    int compare_epochs = 0;
    std::uint64_t compare_seed_val = 0;
    auto* cmd_compare = app.add_subcommand("compare", "Score the linear model against the convolutional model");
    add_input_flags(cmd_compare, compare_opts, true);
    cmd_compare->add_option("--order", compare_order, "p,d,q")->delimiter(',');
    cmd_compare->add_option("--seasonal", compare_seasonal, "P,D,Q,m")->delimiter(',');
    cmd_compare->add_flag("--no-intercept", compare_no_intercept);
    cmd_compare->add_option("--cnn-epochs", compare_epochs, "0 = library default");
    auto* compare_seed_opt = cmd_compare->add_option("--seed", compare_seed_val);
    cmd_compare->add_option("--format", compare_opts.format)
        ->check(CLI::IsMember({"text", "json"}));

    std::string bench_format = "text";
    std::string bench_out_dir = ".";
    std::vector<std::size_t> bench_rows{10, 100, 1000, 10000};
    int bench_epochs = 0;
    std::uint64_t bench_seed_val = 0;
    auto* cmd_bench = app.add_subcommand("bench", "Fit-time scaling of both models on synthetic data");
    cmd_bench->add_option("--rows", bench_rows, "Row counts to time")->delimiter(',');
    cmd_bench->add_option("--cnn-epochs", bench_epochs, "0 = library default");
    auto* bench_seed_opt = cmd_bench->add_option("--seed", bench_seed_val);
    cmd_bench->add_option("--format", bench_format)->check(CLI::IsMember({"text", "csv", "json"}));
    cmd_bench->add_option("--out-dir", bench_out_dir, "Directory for speed.csv");

    CommonOpts plot_opts;
    std::string plot_what;
    auto* cmd_plot = app.add_subcommand("plotdata", "Long-format series_label,x,y CSV for plotting");
    cmd_plot->add_option("what", plot_what, "series|differenced|forecast_overlay|acf|qq|speed")
        ->required();
    add_input_flags(cmd_plot, plot_opts, false);
    cmd_plot->add_option("--out-dir", plot_opts.out_dir,
                         "Directory holding previously written artifacts");

    std::string synth_kind;
    std::string synth_spec;
    std::size_t synth_n = 500;
    double synth_sigma = 1.0;
    std::vector<double> synth_ar;
    std::vector<double> synth_ma;
    std::vector<double> synth_sar;
    std::vector<double> synth_sma;
    double synth_constant_val = 0.0;
    std::vector<int> synth_order;
    std::vector<int> synth_seasonal;
    double synth_slope = 1.0;
    double synth_period = 24.0;
    double synth_amplitude = 1.0;
    std::string synth_format = "text";
    std::string synth_out_dir = ".";
    std::string synth_output;
    std::uint64_t synth_seed_val = 0;
    auto* cmd_synth = app.add_subcommand("synth", "Generate a seeded synthetic hourly series");
    cmd_synth->add_option("--kind", synth_kind,
                          "white_noise|random_walk|ar_process|linear_trend|sine|seasonal_arima");
    cmd_synth->add_option("--spec-json", synth_spec, "Raw generator spec (overrides --kind)");
    cmd_synth->add_option("--n", synth_n)->check(CLI::PositiveNumber);
    cmd_synth->add_option("--sigma", synth_sigma);
    cmd_synth->add_option("--ar", synth_ar)->delimiter(',');
    cmd_synth->add_option("--ma", synth_ma)->delimiter(',');
    cmd_synth->add_option("--sar", synth_sar)->delimiter(',');
    cmd_synth->add_option("--sma", synth_sma)->delimiter(',');
    auto* synth_constant_opt = cmd_synth->add_option("--constant", synth_constant_val);
    cmd_synth->add_option("--order", synth_order, "p,d,q (seasonal_arima)")->delimiter(',');
    cmd_synth->add_option("--seasonal", synth_seasonal, "P,D,Q,m (seasonal_arima)")
        ->delimiter(',');
    cmd_synth->add_option("--slope", synth_slope);
    cmd_synth->add_option("--period", synth_period);
    cmd_synth->add_option("--amplitude", synth_amplitude);
    cmd_synth->add_option("--format", synth_format)->check(CLI::IsMember({"text", "json"}));
    cmd_synth->add_option("--out-dir", synth_out_dir);
    cmd_synth->add_option("--output", synth_output, "Output CSV path (default: out-dir/synth.csv)");
    auto* synth_seed_opt = cmd_synth->add_option("--seed", synth_seed_val);

    std::string pca_input;
    int pca_components = 0;
    std::string pca_format = "text";
    std::string pca_out_dir = ".";
    auto* cmd_pca = app.add_subcommand("pca", "Principal components of a tabular CSV");
    cmd_pca->add_option("--input", pca_input, "Tabular CSV file")->required();
    cmd_pca->add_option("--components", pca_components, "Leading components to keep (0 = all)");
    cmd_pca->add_option("--format", pca_format)->check(CLI::IsMember({"text", "json"}));
    cmd_pca->add_option("--out-dir", pca_out_dir,
                        "Directory for pca_model.json and pca_transformed.csv");

    std::string dedupe_input;
    std::string dedupe_output;
    std::string dedupe_out_dir = ".";
    auto* cmd_dedupe = app.add_subcommand("dedupe", "Remove exact-duplicate rows from a CSV");
    cmd_dedupe->add_option("--input", dedupe_input)->required();
    cmd_dedupe->add_option("--output", dedupe_output, "Output path (default: out-dir/deduped.csv)");
    cmd_dedupe->add_option("--out-dir", dedupe_out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error [BadFlag]: %s\n", e.what());
        return 1;
    }

    try {
        if (*cmd_stats) {
            return run_stats(stats_opts);
        }
        if (*cmd_fit) {
            return run_fit(fit_opts, fit_order, fit_seasonal, fit_no_intercept, fit_k_parts);
        }
        if (*cmd_auto) {
            return run_auto(auto_opts, auto_d, auto_max_p, auto_max_q);
        }
        if (*cmd_forecast) {
            return run_forecast(forecast_opts, forecast_order, forecast_seasonal,
                                forecast_no_intercept, forecast_horizon);
        }
        if (*cmd_compare) {
            const std::optional<std::uint64_t> seed =
                compare_seed_opt->count() > 0 ? std::optional<std::uint64_t>(compare_seed_val)
                                              : std::nullopt;
            return run_compare(compare_opts, compare_order, compare_seasonal,
                               compare_no_intercept, compare_epochs, seed);
        }
        if (*cmd_bench) {
            const std::optional<std::uint64_t> seed =
                bench_seed_opt->count() > 0 ? std::optional<std::uint64_t>(bench_seed_val)
                                            : std::nullopt;
            return run_bench(bench_format, bench_out_dir, bench_rows, bench_epochs, seed);
        }
        if (*cmd_plot) {
            return run_plotdata(plot_opts, plot_what, cmd_plot->count("--input") > 0);
        }
        if (*cmd_synth) {
            const std::optional<std::uint64_t> seed =
                synth_seed_opt->count() > 0 ? std::optional<std::uint64_t>(synth_seed_val)
                                            : std::nullopt;
            const std::optional<double> constant =
                synth_constant_opt->count() > 0 ? std::optional<double>(synth_constant_val)
                                                : std::nullopt;
            return run_synth(synth_kind, synth_spec, synth_n, synth_sigma, synth_ar, synth_ma,
                             synth_sar, synth_sma, constant, synth_order, synth_seasonal,
                             synth_slope, synth_period, synth_amplitude, synth_format,
                             synth_out_dir, synth_output, seed);
        }
        if (*cmd_pca) {
            return run_pca(pca_input, pca_components, pca_format, pca_out_dir);
        }
        if (*cmd_dedupe) {
            return run_dedupe(dedupe_input, dedupe_output, dedupe_out_dir);
        }
    } catch (const CliFailure& failure) {
        return failure.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error [Internal]: %s\n", e.what());
        return 3;
    }
    return 0;
}
