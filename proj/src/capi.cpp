#include "throughcast.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "autoarima.hpp"
#include "bench.hpp"
#include "cnn.hpp"
#include "csv.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "json.hpp"
#include "pca.hpp"
#include "report.hpp"
#include "synth.hpp"

struct tc_series {
    tc::TimeSeries series;
};
struct tc_fit {
    tc::ArimaFit fit;
};
struct tc_forecast {
    tc::ForecastResult fc;
};
struct tc_trace {
    tc::SearchTrace trace;
    tc::ArimaFit best_fit;
};
struct tc_pca {
    tc::PcaModel model;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_kind = "None";

tc_status record_error(const tc::Error& e) {
    g_error_message = e.what();
    g_error_kind = e.kind();
    return static_cast<tc_status>(static_cast<int>(e.error_class()));
}

template <typename F>
tc_status guarded(F&& body) {
    try {
        return body();
    } catch (const tc::Error& e) {
        return record_error(e);
    } catch (const std::exception& e) {
        g_error_message = e.what();
        g_error_kind = "Internal";
        return TC_ERR_NUMERIC;
    }
}

tc_status usage_failure(const char* kind, const char* message) {
    g_error_message = message;
    g_error_kind = kind;
    return TC_ERR_USAGE;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

tc::ModelOrder to_model_order(const tc_order& o) {
    tc::ModelOrder order;
    order.p = o.p;
    order.d = o.d;
    order.q = o.q;
    order.P = o.seasonal_p;
    order.D = o.seasonal_d;
    order.Q = o.seasonal_q;
    order.m = o.seasonal_period;
    order.include_constant = o.include_constant != 0;
    return order;
}

tc::GapPolicy gap_policy_of(int repair) {
    return repair != 0 ? tc::GapPolicy::forward_fill : tc::GapPolicy::strict;
}

/// The series named by `column` ("Tpt_in" or "Tpt_out").
tc::TimeSeries load_column(const char* path, const char* column, int repair) {
    const std::string name = column == nullptr ? "Tpt_in" : column;
    if (name != "Tpt_in" && name != "Tpt_out") {
        throw tc::Error::usage("BadColumn", "column must be Tpt_in or Tpt_out, got " + name);
    }
    tc::SubscriberData data = tc::parse_subscriber_csv(path, gap_policy_of(repair));
    return name == "Tpt_out" ? std::move(data.outgoing) : std::move(data.incoming);
}

tc::SyntheticSpec parse_synth_spec(const char* text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text == nullptr ? "" : text);
    } catch (const nlohmann::json::exception& e) {
        throw tc::Error::usage("BadSynthSpec", std::string("cannot parse spec JSON: ") + e.what());
    }
    tc::SyntheticSpec spec;
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "white_noise") {
            spec.kind = tc::SyntheticKind::white_noise;
        } else if (kind == "random_walk") {
            spec.kind = tc::SyntheticKind::random_walk;
        } else if (kind == "ar_process") {
            spec.kind = tc::SyntheticKind::ar_process;
            spec.ar_coeffs = j.at("ar_coeffs").get<std::vector<double>>();
        } else if (kind == "linear_trend") {
            spec.kind = tc::SyntheticKind::linear_trend;
            spec.slope = j.value("slope", 1.0);
        } else if (kind == "sine") {
            spec.kind = tc::SyntheticKind::sine;
            spec.period = j.value("period", 24.0);
            spec.amplitude = j.value("amplitude", 1.0);
        } else if (kind == "seasonal_arima") {
            spec.kind = tc::SyntheticKind::seasonal_arima;
            const auto o = j.at("order").get<std::vector<int>>();
            if (o.size() != 7) {
                throw tc::Error::usage("BadSynthSpec", "order must be [p,d,q,P,D,Q,m]");
            }
            spec.order.p = o[0];
            spec.order.d = o[1];
            spec.order.q = o[2];
            spec.order.P = o[3];
            spec.order.D = o[4];
            spec.order.Q = o[5];
            spec.order.m = o[6];
            spec.coeffs.ar = j.value("ar", std::vector<double>{});
            spec.coeffs.ma = j.value("ma", std::vector<double>{});
            spec.coeffs.seasonal_ar = j.value("sar", std::vector<double>{});
            spec.coeffs.seasonal_ma = j.value("sma", std::vector<double>{});
            spec.order.include_constant = j.contains("constant");
            spec.coeffs.constant = j.value("constant", 0.0);
            if (static_cast<int>(spec.coeffs.ar.size()) != spec.order.p ||
                static_cast<int>(spec.coeffs.ma.size()) != spec.order.q ||
                static_cast<int>(spec.coeffs.seasonal_ar.size()) != spec.order.P ||
                static_cast<int>(spec.coeffs.seasonal_ma.size()) != spec.order.Q) {
                throw tc::Error::usage("BadSynthSpec",
                                       "coefficient array lengths must match the order");
            }
        } else {
            throw tc::Error::usage("BadSynthSpec", "unknown kind: " + kind);
        }
    } catch (const nlohmann::json::exception& e) {
        throw tc::Error::usage("BadSynthSpec", std::string("spec JSON missing fields: ") + e.what());
    }
    return spec;
}

std::string read_artifact(const std::string& dir, const char* name) {
    const std::filesystem::path path = std::filesystem::path(dir) / name;
    std::ifstream in(path);
    if (!in) {
        throw tc::Error::data("MissingArtifact",
                              "expected artifact " + path.string() + "; run the producing command first");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Rows of a two-column numeric CSV artifact (header skipped).
std::vector<std::pair<double, double>> parse_pairs_csv(const std::string& text,
                                                       const char* artifact) {
    std::vector<std::pair<double, double>> out;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header || line.empty()) {
            header = false;
            continue;
        }
        const std::size_t c1 = line.find(',');
        if (c1 == std::string::npos) {
            throw tc::Error::data("MissingArtifact",
                                  std::string(artifact) + " artifact is malformed");
        }
        std::size_t c2 = line.find(',', c1 + 1);
        if (c2 == std::string::npos) { c2 = line.size(); }
        try {
            out.emplace_back(std::stod(line.substr(0, c1)),
                             std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
        } catch (const std::exception&) {
            throw tc::Error::data("MissingArtifact",
                                  std::string(artifact) + " artifact is malformed");
        }
    }
    return out;
}

constexpr int kStatsMaxLag = 40;

std::string key_value_line(const std::string& key, const std::string& value) {
    std::string line = key;
    if (line.size() < 28) { line += std::string(28 - line.size(), ' '); }
    return line + value + "\n";
}

std::string fmt_double(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

extern "C" {

const char* tc_version(void) { return "1.0.0"; }
const char* tc_last_error(void) { return g_error_message.c_str(); }
const char* tc_last_error_kind(void) { return g_error_kind.c_str(); }
void tc_string_free(char* s) { delete[] s; }

tc_status tc_series_load_csv(const char* path, const char* column, int repair, tc_series** out) {
    if (path == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "path and out must be non-null");
    }
    return guarded([&] {
        *out = new tc_series{load_column(path, column, repair)};
        return TC_OK;
    });
}

tc_status tc_series_synth(const char* spec_json, size_t n, uint64_t seed, double sigma,
                          tc_series** out) {
    if (out == nullptr) { return usage_failure("NullArgument", "out must be non-null"); }
    return guarded([&] {
        const tc::SyntheticSpec spec = parse_synth_spec(spec_json);
        *out = new tc_series{tc::generate_synthetic(spec, n, seed, sigma)};
        return TC_OK;
    });
}

size_t tc_series_size(const tc_series* s) { return s == nullptr ? 0 : s->series.size(); }

tc_status tc_series_value(const tc_series* s, size_t i, double* out) {
    if (s == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series and out must be non-null");
    }
    if (i >= s->series.size()) { return usage_failure("IndexOutOfRange", "index past the end"); }
    *out = s->series.value_at(i);
    return TC_OK;
}

tc_status tc_series_epoch_ms(const tc_series* s, size_t i, int64_t* out) {
    if (s == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series and out must be non-null");
    }
    if (i >= s->series.size()) { return usage_failure("IndexOutOfRange", "index past the end"); }
    *out = s->series.epoch_ms_at(i);
    return TC_OK;
}

tc_status tc_series_write_csv(const tc_series* s, const char* path) {
    if (s == nullptr || path == nullptr) {
        return usage_failure("NullArgument", "series and path must be non-null");
    }
    return guarded([&] {
        tc::write_subscriber_csv(path, s->series, s->series);
        return TC_OK;
    });
}

void tc_series_free(tc_series* s) { delete s; }

tc_status tc_stats_report(const char* path, const char* column, int repair, int as_json,
                          char** report_out, char** correlogram_csv_out, char** qq_csv_out,
                          int* constant_flag) {
    if (path == nullptr || report_out == nullptr || correlogram_csv_out == nullptr ||
        qq_csv_out == nullptr || constant_flag == nullptr) {
        return usage_failure("NullArgument", "all output pointers must be non-null");
    }
    return guarded([&] {
        const tc::TabularFrame frame = tc::load_frame_csv(path);
        const std::size_t n_rows = frame.rows.size();
        const std::size_t n_cols = frame.column_names.size();
        std::size_t missing = 0;
        for (const auto& row : frame.rows) {
            for (const auto& cell : row) {
                if (cell.empty()) { missing += 1; }
            }
        }
        const tc::DedupeResult dedupe = tc::dedupe_rows(frame);
        const double missing_pct =
            n_rows == 0 ? 0.0
                        : 100.0 * static_cast<double>(missing) / static_cast<double>(n_rows * n_cols);
        const double dup_pct = 100.0 * dedupe.removed_fraction;

        const tc::TimeSeries series = load_column(path, column, repair);
        bool constant = true;
        for (double v : series.values()) {
            if (v != series.value_at(0)) {
                constant = false;
                break;
            }
        }
        *constant_flag = constant ? 1 : 0;

        tc::DescriptiveStats stats;
        tc::AdfResult adf;
        if (constant) {
            stats.mean = series.value_at(0);
            stats.std_dev = 0.0;
            stats.skew = std::numeric_limits<double>::quiet_NaN();
            stats.kurtosis = std::numeric_limits<double>::quiet_NaN();
            stats.jarque_bera = {std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()};
        } else {
            stats = tc::descriptive_stats(series.values());
            adf = tc::adf_test(series.values());
        }

        std::string correlogram_csv = "lag,acf,pacf,band\n";
        const int max_lag = std::min<int>(kStatsMaxLag, static_cast<int>(series.size()) / 2 - 1);
        if (!constant && max_lag >= 1) {
            const tc::Correlogram gram = tc::correlogram(series.values(), max_lag);
            for (std::size_t i = 0; i < gram.lags.size(); ++i) {
                correlogram_csv += std::to_string(gram.lags[i]) + "," +
                                   tc::format_full(gram.acf[i]) + "," +
                                   tc::format_full(gram.pacf[i]) + "," +
                                   tc::format_full(gram.confidence_band) + "\n";
            }
        }

        std::string qq_csv = "theoretical,sample\n";
        for (const auto& [theoretical, sample] : tc::qq_points(series.values())) {
            qq_csv += tc::format_full(theoretical) + "," + tc::format_full(sample) + "\n";
        }

        std::string report;
        if (as_json != 0) {
            nlohmann::json j;
            j["number_of_rows"] = n_rows;
            j["number_of_columns"] = n_cols;
            j["missing_cells"] = missing;
            j["missing_cells_pct"] = missing_pct;
            j["duplicate_rows"] = dedupe.removed_count;
            j["duplicate_rows_pct"] = dup_pct;
            j["column"] = series.name();
            j["mean"] = stats.mean;
            j["std_dev"] = stats.std_dev;
            j["skew"] = stats.skew;
            j["kurtosis"] = stats.kurtosis;
            j["jarque_bera"] = stats.jarque_bera.statistic;
            j["jarque_bera_p"] = stats.jarque_bera.p_value;
            if (!constant) {
                j["adf"] = {{"statistic", adf.statistic},
                            {"p_value", adf.p_value},
                            {"lags_used", adf.lags_used},
                            {"n_obs", adf.n_obs},
                            {"critical_values", adf.critical_values},
                            {"is_stationary", adf.is_stationary}};
            } else {
                j["adf"] = nullptr;
                j["notice"] = "column is constant; unit-root testing is undefined";
            }
            report = j.dump(2);
        } else {
            report += "Dataset Statistics\n";
            report += key_value_line("Number of Rows", std::to_string(n_rows));
            report += key_value_line("Number of Columns", std::to_string(n_cols));
            report += key_value_line("Missing Cells", std::to_string(missing));
            report += key_value_line("Missing Cells (%)", fmt_double("%.1f", missing_pct));
            report += key_value_line("Duplicate Rows", std::to_string(dedupe.removed_count));
            report += key_value_line("Duplicate Rows (%)", fmt_double("%.1f", dup_pct));
            report += "\n";
            report += key_value_line("Column", series.name());
            report += key_value_line("Mean", fmt_double("%.6g", stats.mean));
            report += key_value_line("Std Dev", fmt_double("%.6g", stats.std_dev));
            report += key_value_line("Skew", fmt_double("%.6g", stats.skew));
            report += key_value_line("Kurtosis", fmt_double("%.6g", stats.kurtosis));
            report += key_value_line("Jarque-Bera", fmt_double("%.6g", stats.jarque_bera.statistic));
            report += key_value_line("Prob(JB)", fmt_double("%.6g", stats.jarque_bera.p_value));
            report += "\n";
            if (!constant) {
                report += key_value_line("ADF Statistic", fmt_double("%.6g", adf.statistic));
                report += key_value_line("ADF p-value", fmt_double("%.6g", adf.p_value));
                report += key_value_line("ADF Lags Used", std::to_string(adf.lags_used));
                report += key_value_line("ADF Observations", std::to_string(adf.n_obs));
                for (const char* level : {"1%", "5%", "10%"}) {
                    const auto it = adf.critical_values.find(level);
                    if (it != adf.critical_values.end()) {
                        report += key_value_line("Critical Value (" + it->first + ")",
                                                 fmt_double("%.3f", it->second));
                    }
                }
                report += key_value_line("Stationary (5%)", adf.is_stationary ? "yes" : "no");
            } else {
                report += "ADF: column is constant; unit-root testing is undefined\n";
            }
        }
        *report_out = dup_string(report);
        *correlogram_csv_out = dup_string(correlogram_csv);
        *qq_csv_out = dup_string(qq_csv);
        return TC_OK;
    });
}

tc_status tc_fit_series(const tc_series* s, const tc_order* order, tc_fit** out) {
    if (s == nullptr || order == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series, order, and out must be non-null");
    }
    return guarded([&] {
        *out = new tc_fit{tc::fit(s->series, to_model_order(*order))};
        return TC_OK;
    });
}

tc_status tc_fit_series_partitioned(const tc_series* s, const tc_order* order, int k_parts,
                                    tc_fit** out) {
    if (s == nullptr || order == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series, order, and out must be non-null");
    }
    return guarded([&] {
        *out = new tc_fit{tc::fit_partitioned(s->series, to_model_order(*order), k_parts)};
        return TC_OK;
    });
}

tc_status tc_fit_summary(const tc_fit* f, int as_json, char** out) {
    if (f == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "fit and out must be non-null");
    }
    return guarded([&] {
        const tc::DiagnosticsReport diag = tc::residual_diagnostics(f->fit.residuals);
        *out = dup_string(as_json != 0 ? tc::fit_summary_json(f->fit, diag, "y")
                                       : tc::fit_summary_text(f->fit, diag, "y"));
        return TC_OK;
    });
}

double tc_fit_aic(const tc_fit* f) { return f == nullptr ? 0.0 : f->fit.aic; }
double tc_fit_log_likelihood(const tc_fit* f) {
    return f == nullptr ? 0.0 : f->fit.log_likelihood;
}
double tc_fit_sigma2(const tc_fit* f) { return f == nullptr ? 0.0 : f->fit.sigma2; }
int64_t tc_fit_n_effective(const tc_fit* f) {
    return f == nullptr ? 0 : static_cast<int64_t>(f->fit.n_effective);
}

tc_status tc_fit_coefficients_json(const tc_fit* f, char** out) {
    if (f == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "fit and out must be non-null");
    }
    return guarded([&] {
        nlohmann::json j;
        j["ar"] = f->fit.coeffs.ar;
        j["ma"] = f->fit.coeffs.ma;
        j["seasonal_ar"] = f->fit.coeffs.seasonal_ar;
        j["seasonal_ma"] = f->fit.coeffs.seasonal_ma;
        j["constant"] = f->fit.coeffs.constant;
        j["std_errors"] = f->fit.coeff_std_errors;
        *out = dup_string(j.dump(2));
        return TC_OK;
    });
}

void tc_fit_free(tc_fit* f) { delete f; }

tc_status tc_auto_search(const tc_series* s, int d, int max_p, int max_q, tc_trace** out) {
    if (s == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series and out must be non-null");
    }
    return guarded([&] {
        std::optional<int> fixed_d;
        if (d >= 0) { fixed_d = d; }
        auto [best, trace] = tc::stepwise_search(s->series, fixed_d, max_p, max_q);
        *out = new tc_trace{std::move(trace), std::move(best)};
        return TC_OK;
    });
}

tc_status tc_trace_text(const tc_trace* t, char** out) {
    if (t == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "trace and out must be non-null");
    }
    return guarded([&] {
        *out = dup_string(tc::format_trace(t->trace));
        return TC_OK;
    });
}

tc_status tc_trace_best_order(const tc_trace* t, tc_order* out) {
    if (t == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "trace and out must be non-null");
    }
    const tc::ModelOrder& o = t->best_fit.order;
    out->p = o.p;
    out->d = o.d;
    out->q = o.q;
    out->seasonal_p = o.P;
    out->seasonal_d = o.D;
    out->seasonal_q = o.Q;
    out->seasonal_period = o.m;
    out->include_constant = o.include_constant ? 1 : 0;
    return TC_OK;
}

tc_status tc_trace_best_fit(const tc_trace* t, tc_fit** out) {
    if (t == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "trace and out must be non-null");
    }
    *out = new tc_fit{t->best_fit};
    return TC_OK;
}

void tc_trace_free(tc_trace* t) { delete t; }

tc_status tc_forecast_make(const tc_fit* f, const tc_series* s, int horizon, tc_forecast** out) {
    if (f == nullptr || s == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "fit, series, and out must be non-null");
    }
    return guarded([&] {
        *out = new tc_forecast{tc::forecast(f->fit, s->series, horizon)};
        return TC_OK;
    });
}

int tc_forecast_horizon(const tc_forecast* fc) { return fc == nullptr ? 0 : fc->fc.horizon; }

tc_status tc_forecast_row(const tc_forecast* fc, int i, int64_t* epoch_ms, double* mean,
                          double* lower_95, double* upper_95) {
    if (fc == nullptr) { return usage_failure("NullArgument", "forecast must be non-null"); }
    if (i < 0 || i >= fc->fc.horizon) {
        return usage_failure("IndexOutOfRange", "row index past the horizon");
    }
    if (epoch_ms != nullptr) { *epoch_ms = fc->fc.future_timestamps[i] * 1000; }
    if (mean != nullptr) { *mean = fc->fc.mean[i]; }
    if (lower_95 != nullptr) { *lower_95 = fc->fc.lower_95[i]; }
    if (upper_95 != nullptr) { *upper_95 = fc->fc.upper_95[i]; }
    return TC_OK;
}

tc_status tc_forecast_table(const tc_forecast* fc, int as_json, char** out) {
    if (fc == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "forecast and out must be non-null");
    }
    return guarded([&] {
        *out = dup_string(as_json != 0 ? tc::forecast_json(fc->fc) : tc::forecast_csv(fc->fc));
        return TC_OK;
    });
}

tc_status tc_fitted_csv(const tc_fit* f, const tc_series* s, char** out) {
    if (f == nullptr || s == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "fit, series, and out must be non-null");
    }
    return guarded([&] {
        const tc::ModelOrder& o = f->fit.order;
        const std::size_t offset =
            static_cast<std::size_t>(o.d + o.D * o.m + o.p + o.P * o.m);
        if (offset + f->fit.residuals.size() != s->series.size()) {
            throw tc::Error::usage("SeriesMismatch",
                                   "fit residuals do not align with this series length");
        }
        std::string csv = "epoch_ms,fitted\n";
        for (std::size_t j = 0; j < f->fit.residuals.size(); ++j) {
            const std::size_t idx = offset + j;
            csv += std::to_string(s->series.epoch_ms_at(idx)) + "," +
                   tc::format_full(s->series.value_at(idx) - f->fit.residuals[j]) + "\n";
        }
        *out = dup_string(csv);
        return TC_OK;
    });
}

void tc_forecast_free(tc_forecast* fc) { delete fc; }

tc_status tc_compare(const tc_series* s, const tc_order* order, int cnn_epochs, uint64_t seed,
                     int as_json, char** out) {
    if (s == nullptr || order == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "series, order, and out must be non-null");
    }
    return guarded([&] {
        const tc::DataSplit split = tc::split_train_val_test(s->series);
        tc::CnnConfig cnn;
        cnn.seed = seed;
        if (cnn_epochs > 0) { cnn.epochs = cnn_epochs; }
        const tc::CompareReport report = tc::compare_models(split, to_model_order(*order), cnn);
        *out = dup_string(as_json != 0 ? tc::compare_json(report) : tc::compare_text(report));
        return TC_OK;
    });
}

tc_status tc_bench(const size_t* row_counts, size_t n_counts, uint64_t seed, int cnn_epochs,
                   int format, char** out) {
    if (row_counts == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "row_counts and out must be non-null");
    }
    return guarded([&] {
        const std::vector<std::size_t> counts(row_counts, row_counts + n_counts);
        tc::ModelOrder order;
        order.p = 2;
        order.q = 2;
        order.include_constant = true;
        tc::CnnConfig cnn;
        cnn.seed = seed;
        if (cnn_epochs > 0) { cnn.epochs = cnn_epochs; }
        const tc::SpeedTable table = tc::run_speed_test(counts, seed, order, cnn);
        switch (format) {
            case 1: *out = dup_string(tc::speed_table_csv(table)); break;
            case 2: *out = dup_string(tc::speed_table_json(table)); break;
            default: *out = dup_string(tc::speed_table_text(table)); break;
        }
        return TC_OK;
    });
}

tc_status tc_pca_fit_csv(const char* path, tc_pca** out) {
    if (path == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "path and out must be non-null");
    }
    return guarded([&] {
        const tc::NumericMatrix matrix = tc::to_numeric_matrix(tc::load_frame_csv(path));
        *out = new tc_pca{tc::fit_pca(matrix.rows)};
        return TC_OK;
    });
}

size_t tc_pca_n_features(const tc_pca* p) {
    return p == nullptr ? 0 : static_cast<size_t>(p->model.n_features);
}

tc_status tc_pca_model_json(const tc_pca* p, char** out) {
    if (p == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "model and out must be non-null");
    }
    return guarded([&] {
        *out = dup_string(tc::pca_to_json(p->model));
        return TC_OK;
    });
}

tc_status tc_pca_transform_csv(const tc_pca* p, const char* path, int k, char** out) {
    if (p == nullptr || path == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "model, path, and out must be non-null");
    }
    return guarded([&] {
        const tc::NumericMatrix matrix = tc::to_numeric_matrix(tc::load_frame_csv(path));
        std::string csv;
        for (int i = 0; i < k; ++i) { csv += (i > 0 ? ",pc" : "pc") + std::to_string(i + 1); }
        csv += "\n";
        for (const std::vector<double>& row : matrix.rows) {
            const std::vector<double> y =
                tc::transform(p->model, row, static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < y.size(); ++i) {
                csv += (i > 0 ? "," : "") + tc::format_full(y[i]);
            }
            csv += "\n";
        }
        *out = dup_string(csv);
        return TC_OK;
    });
}

tc_status tc_pca_explained_json(const tc_pca* p, char** out) {
    if (p == nullptr || out == nullptr) {
        return usage_failure("NullArgument", "model and out must be non-null");
    }
    return guarded([&] {
        nlohmann::json j;
        j["explained_variance"] = tc::explained_variance(p->model);
        j["eigenvalues"] = p->model.eigenvalues;
        *out = dup_string(j.dump(2));
        return TC_OK;
    });
}

void tc_pca_free(tc_pca* p) { delete p; }

tc_status tc_dedupe_csv(const char* in_path, const char* out_path, char** summary_out) {
    if (in_path == nullptr || out_path == nullptr || summary_out == nullptr) {
        return usage_failure("NullArgument", "paths and summary output must be non-null");
    }
    return guarded([&] {
        const tc::TabularFrame frame = tc::load_frame_csv(in_path);
        const tc::DedupeResult result = tc::dedupe_rows(frame);
        tc::write_frame_csv(out_path, result.frame);
        std::string summary = "Removed " + std::to_string(result.removed_count) + " of " +
                              std::to_string(frame.rows.size()) + " rows (" +
                              fmt_double("%.1f", 100.0 * result.removed_fraction) + "%)";
        *summary_out = dup_string(summary);
        return TC_OK;
    });
}

tc_status tc_plotdata(const char* what, const char* input_path, const char* column, int repair,
                      const char* artifact_dir, char** csv_out) {
    if (what == nullptr || csv_out == nullptr) {
        return usage_failure("NullArgument", "what and csv_out must be non-null");
    }
    return guarded([&] {
        const std::string mode = what;
        std::vector<std::tuple<std::string, double, double>> rows;
        auto require_input = [&]() -> tc::TimeSeries {
            if (input_path == nullptr) {
                throw tc::Error::usage("NullArgument", "this plot needs --input");
            }
            return load_column(input_path, column, repair);
        };
        if (mode == "series") {
            const tc::TimeSeries series = require_input();
            for (std::size_t i = 0; i < series.size(); ++i) {
                rows.emplace_back(series.name(), static_cast<double>(series.epoch_ms_at(i)),
                                  series.value_at(i));
            }
        } else if (mode == "differenced") {
            const tc::TimeSeries series = require_input();
            for (std::size_t i = 0; i < series.size(); ++i) {
                rows.emplace_back("original", static_cast<double>(series.epoch_ms_at(i)),
                                  series.value_at(i));
            }
            const std::vector<double> diffed = tc::difference(series.values(), 1);
            for (std::size_t i = 0; i < diffed.size(); ++i) {
                rows.emplace_back("differenced",
                                  static_cast<double>(series.epoch_ms_at(i + 1)), diffed[i]);
            }
        } else if (mode == "acf") {
            const tc::TimeSeries series = require_input();
            const int max_lag =
                std::min<int>(kStatsMaxLag, static_cast<int>(series.size()) / 2 - 1);
            const tc::Correlogram gram = tc::correlogram(series.values(), max_lag);
            for (std::size_t i = 0; i < gram.lags.size(); ++i) {
                rows.emplace_back("acf", gram.lags[i], gram.acf[i]);
            }
            for (std::size_t i = 0; i < gram.lags.size(); ++i) {
                rows.emplace_back("band", gram.lags[i], gram.confidence_band);
            }
            for (std::size_t i = 0; i < gram.lags.size(); ++i) {
                rows.emplace_back("band", gram.lags[i], -gram.confidence_band);
            }
        } else if (mode == "qq") {
            const tc::TimeSeries series = require_input();
            for (const auto& [theoretical, sample] : tc::qq_points(series.values())) {
                rows.emplace_back("qq", theoretical, sample);
            }
        } else if (mode == "forecast_overlay") {
            if (artifact_dir == nullptr) {
                throw tc::Error::usage("NullArgument", "this plot needs --out-dir");
            }
            const tc::TimeSeries series = require_input();
            for (std::size_t i = 0; i < series.size(); ++i) {
                rows.emplace_back("actual", static_cast<double>(series.epoch_ms_at(i)),
                                  series.value_at(i));
            }
            for (const auto& [x, y] :
                 parse_pairs_csv(read_artifact(artifact_dir, "fitted.csv"), "fitted.csv")) {
                rows.emplace_back("fitted", x, y);
            }
            for (const auto& [x, y] :
                 parse_pairs_csv(read_artifact(artifact_dir, "forecast.csv"), "forecast.csv")) {
                rows.emplace_back("forecast", x, y);
            }
        } else if (mode == "speed") {
            if (artifact_dir == nullptr) {
                throw tc::Error::usage("NullArgument", "this plot needs --out-dir");
            }
            const std::string text = read_artifact(artifact_dir, "speed.csv");
            std::istringstream in(text);
            std::string line;
            bool header = true;
            while (std::getline(in, line)) {
                if (header || line.empty()) {
                    header = false;
                    continue;
                }
                std::vector<std::string> cells;
                std::size_t start = 0;
                while (true) {
                    const std::size_t comma = line.find(',', start);
                    cells.push_back(line.substr(start, comma - start));
                    if (comma == std::string::npos) { break; }
                    start = comma + 1;
                }
                if (cells.size() != 6) {
                    throw tc::Error::data("MissingArtifact", "speed.csv artifact is malformed");
                }
                if (cells[3] == "1") { continue; }  // skipped row
                const double count = std::stod(cells[0]);
                if (cells[4] == "1") { rows.emplace_back("arima", count, std::stod(cells[1])); }
                if (cells[5] == "1") { rows.emplace_back("cnn", count, std::stod(cells[2])); }
            }
        } else {
            throw tc::Error::usage("BadPlotKind",
                                   "what must be one of series, differenced, forecast_overlay, "
                                   "acf, qq, speed");
        }
        *csv_out = dup_string(tc::tidy_csv(rows));
        return TC_OK;
    });
}

}  // extern "C"
