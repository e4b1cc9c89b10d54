// Exercises the shared-library C interface end to end; nothing here links
// against the C++ core directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"
#include "throughcast.h"

namespace {

/// Frees a C-API string on scope exit.
struct Str {
    char* p = nullptr;
    ~Str() { tc_string_free(p); }
    std::string view() const { return p == nullptr ? std::string() : std::string(p); }
};

tc_order plain_order(int p, int d, int q, int include_constant = 1) {
    tc_order o{};
    o.p = p;
    o.d = d;
    o.q = q;
    o.include_constant = include_constant;
    return o;
}

tc_series* make_ar_series(std::size_t n, uint64_t seed) {
    tc_series* s = nullptr;
    REQUIRE(tc_series_synth(R"({"kind":"ar_process","ar_coeffs":[0.6]})", n, seed, 1.0, &s) ==
            TC_OK);
    REQUIRE(s != nullptr);
    return s;
}

}  // namespace

TEST_CASE("version string is present") {
    const char* v = tc_version();
    REQUIRE(v != nullptr);
    CHECK(std::strlen(v) > 0);
}

TEST_CASE("null arguments are usage errors with a stable kind") {
    CHECK(tc_series_load_csv(nullptr, "Tpt_in", 0, nullptr) == TC_ERR_USAGE);
    CHECK(std::string(tc_last_error_kind()) == "NullArgument");
    CHECK(std::strlen(tc_last_error()) > 0);

    tc_series* s = make_ar_series(50, 1);
    double v = 0.0;
    CHECK(tc_series_value(s, 50, &v) == TC_ERR_USAGE);
    CHECK(std::string(tc_last_error_kind()) == "IndexOutOfRange");
    tc_series_free(s);
}

TEST_CASE("missing input file is a data error") {
    tc_series* s = nullptr;
    CHECK(tc_series_load_csv("/nonexistent/throughput.csv", "Tpt_in", 0, &s) == TC_ERR_DATA);
    CHECK(std::string(tc_last_error_kind()) == "FileNotFound");
    CHECK(s == nullptr);
}

TEST_CASE("synthetic series survives a CSV write/load round trip") {
    test_util::TempDir dir;
    const std::string path = dir.file("synth.csv").string();
    tc_series* s = make_ar_series(120, 9);
    REQUIRE(tc_series_write_csv(s, path.c_str()) == TC_OK);

    tc_series* back = nullptr;
    REQUIRE(tc_series_load_csv(path.c_str(), "Tpt_in", 0, &back) == TC_OK);
    REQUIRE(tc_series_size(back) == tc_series_size(s));
    for (std::size_t i = 0; i < tc_series_size(s); ++i) {
        double a = 0.0;
        double b = 0.0;
        int64_t ta = 0;
        int64_t tb = 0;
        REQUIRE(tc_series_value(s, i, &a) == TC_OK);
        REQUIRE(tc_series_value(back, i, &b) == TC_OK);
        REQUIRE(tc_series_epoch_ms(s, i, &ta) == TC_OK);
        REQUIRE(tc_series_epoch_ms(back, i, &tb) == TC_OK);
        REQUIRE(a == b);  // full-precision emission makes the trip exact
        REQUIRE(ta == tb);
    }
    tc_series_free(back);
    tc_series_free(s);
}

TEST_CASE("fit produces the classic summary and parseable coefficients") {
    tc_series* s = make_ar_series(300, 21);
    const tc_order order = plain_order(1, 0, 0);
    tc_fit* f = nullptr;
    REQUIRE(tc_fit_series(s, &order, &f) == TC_OK);

    CHECK(tc_fit_n_effective(f) == 299);  // CSS conditions on the first AR lag
    CHECK(std::isfinite(tc_fit_aic(f)));
    CHECK(std::isfinite(tc_fit_log_likelihood(f)));
    CHECK(tc_fit_sigma2(f) > 0.0);

    Str summary;
    REQUIRE(tc_fit_summary(f, 0, &summary.p) == TC_OK);
    CHECK(summary.view().find("SARIMAX Results") != std::string::npos);
    CHECK(summary.view().find("ar.L1") != std::string::npos);

    Str summary_json;
    REQUIRE(tc_fit_summary(f, 1, &summary_json.p) == TC_OK);
    const auto j = nlohmann::json::parse(summary_json.view());
    CHECK(j.at("aic").get<double>() == doctest::Approx(tc_fit_aic(f)));

    Str coeffs;
    REQUIRE(tc_fit_coefficients_json(f, &coeffs.p) == TC_OK);
    const auto c = nlohmann::json::parse(coeffs.view());
    REQUIRE(c.at("ar").size() == 1);
    CHECK(c.at("ar")[0].get<double>() > 0.3);
    CHECK(c.at("std_errors").size() == 2);  // ar.L1 and intercept

    tc_fit_free(f);
    tc_series_free(s);
}

TEST_CASE("an impossible order for the sample size is a data error") {
    tc_series* s = make_ar_series(50, 3);
    const tc_order order = plain_order(9, 9, 9);
    tc_fit* f = nullptr;
    CHECK(tc_fit_series(s, &order, &f) == TC_ERR_DATA);
    CHECK(std::string(tc_last_error_kind()) == "SeriesTooShort");
    tc_series_free(s);
}

TEST_CASE("partitioned fit works through the C interface") {
    tc_series* s = make_ar_series(400, 33);
    const tc_order order = plain_order(1, 0, 0);
    tc_fit* f = nullptr;
    REQUIRE(tc_fit_series_partitioned(s, &order, 2, &f) == TC_OK);
    CHECK(std::isfinite(tc_fit_aic(f)));
    CHECK(tc_fit_series_partitioned(s, &order, 1, &f) == TC_ERR_USAGE);
    tc_fit_free(f);
    tc_series_free(s);
}

TEST_CASE("stepwise search reports a trace and a best fit") {
    tc_series* s = make_ar_series(300, 41);
    tc_trace* t = nullptr;
    REQUIRE(tc_auto_search(s, 0, 3, 3, &t) == TC_OK);

    Str trace;
    REQUIRE(tc_trace_text(t, &trace.p) == TC_OK);
    CHECK(trace.view().find("ARIMA(") != std::string::npos);
    CHECK(trace.view().find("Best model:") != std::string::npos);
    CHECK(trace.view().find("Total fit time:") != std::string::npos);

    tc_order best{};
    REQUIRE(tc_trace_best_order(t, &best) == TC_OK);
    CHECK(best.d == 0);
    CHECK(best.p <= 3);
    CHECK(best.q <= 3);

    tc_fit* f = nullptr;
    REQUIRE(tc_trace_best_fit(t, &f) == TC_OK);
    CHECK(std::isfinite(tc_fit_aic(f)));
    tc_fit_free(f);
    tc_trace_free(t);
    tc_series_free(s);
}

TEST_CASE("forecast rows continue the hourly grid with ordered intervals") {
    tc_series* s = make_ar_series(200, 55);
    const tc_order order = plain_order(1, 0, 1);
    tc_fit* f = nullptr;
    REQUIRE(tc_fit_series(s, &order, &f) == TC_OK);

    tc_forecast* fc = nullptr;
    REQUIRE(tc_forecast_make(f, s, 24, &fc) == TC_OK);
    REQUIRE(tc_forecast_horizon(fc) == 24);

    int64_t last_ms = 0;
    REQUIRE(tc_series_epoch_ms(s, tc_series_size(s) - 1, &last_ms) == TC_OK);
    int64_t prev = last_ms;
    for (int i = 0; i < 24; ++i) {
        int64_t ms = 0;
        double mean = 0.0;
        double lo = 0.0;
        double hi = 0.0;
        REQUIRE(tc_forecast_row(fc, i, &ms, &mean, &lo, &hi) == TC_OK);
        REQUIRE(ms == prev + 3600000);
        REQUIRE(lo < mean);
        REQUIRE(mean < hi);
        prev = ms;
    }

    Str table;
    REQUIRE(tc_forecast_table(fc, 0, &table.p) == TC_OK);
    CHECK(table.view().rfind("epoch_ms,mean,lower_95,upper_95\n", 0) == 0);
    Str table_json;
    REQUIRE(tc_forecast_table(fc, 1, &table_json.p) == TC_OK);
    CHECK(nlohmann::json::parse(table_json.view()).at("mean").size() == 24);

    Str fitted;
    REQUIRE(tc_fitted_csv(f, s, &fitted.p) == TC_OK);
    CHECK(fitted.view().rfind("epoch_ms,fitted\n", 0) == 0);

    tc_forecast_free(fc);
    tc_fit_free(f);
    tc_series_free(s);
}

TEST_CASE("stats report flags constant columns and emits plot data") {
    test_util::TempDir dir;
    const std::string path = dir.file("data.csv").string();
    tc_series* s = make_ar_series(150, 67);
    REQUIRE(tc_series_write_csv(s, path.c_str()) == TC_OK);
    tc_series_free(s);

    Str report;
    Str correlogram;
    Str qq;
    int constant_flag = -1;
    REQUIRE(tc_stats_report(path.c_str(), "Tpt_in", 0, 1, &report.p, &correlogram.p, &qq.p,
                            &constant_flag) == TC_OK);
    CHECK(constant_flag == 0);
    const auto j = nlohmann::json::parse(report.view());
    CHECK(j.contains("adf"));
    CHECK(correlogram.view().rfind("lag,acf,pacf,band\n", 0) == 0);
    CHECK(qq.view().rfind("theoretical,sample\n", 0) == 0);

    // A constant column degrades to a notice instead of failing.
    const std::string const_path = dir.file("const.csv").string();
    tc_series* flat = nullptr;
    REQUIRE(tc_series_synth(R"({"kind":"linear_trend","slope":0})", 60, 1, 0.0, &flat) == TC_OK);
    REQUIRE(tc_series_write_csv(flat, const_path.c_str()) == TC_OK);
    tc_series_free(flat);
    Str report2;
    Str cg2;
    Str qq2;
    constant_flag = -1;
    REQUIRE(tc_stats_report(const_path.c_str(), "Tpt_in", 0, 0, &report2.p, &cg2.p, &qq2.p,
                            &constant_flag) == TC_OK);
    CHECK(constant_flag == 1);
}

TEST_CASE("comparison and bench reports come back as parseable JSON/CSV") {
    tc_series* s = make_ar_series(300, 71);
    const tc_order order = plain_order(1, 0, 0);
    Str cmp;
    REQUIRE(tc_compare(s, &order, 1, 5, 1, &cmp.p) == TC_OK);
    const auto j = nlohmann::json::parse(cmp.view());
    CHECK(j.contains("arima"));
    CHECK(j.contains("cnn"));
    CHECK(j.at("arima").contains("rmse"));
    tc_series_free(s);

    const size_t counts[2] = {70, 100};
    Str bench;
    REQUIRE(tc_bench(counts, 2, 5, 1, 1, &bench.p) == TC_OK);
    CHECK(bench.view().rfind("row_count,arima_seconds,cnn_seconds,skipped,arima_ok,cnn_ok\n",
                             0) == 0);
    Str bench_json;
    REQUIRE(tc_bench(counts, 2, 5, 1, 2, &bench_json.p) == TC_OK);
    CHECK(nlohmann::json::parse(bench_json.view()).at("rows").size() == 2);
}

TEST_CASE("plot data covers direct kinds and misses artifacts loudly") {
    test_util::TempDir dir;
    const std::string path = dir.file("data.csv").string();
    tc_series* s = make_ar_series(120, 81);
    REQUIRE(tc_series_write_csv(s, path.c_str()) == TC_OK);
    tc_series_free(s);

    for (const char* what : {"series", "differenced", "acf", "qq"}) {
        Str csv;
        REQUIRE(tc_plotdata(what, path.c_str(), "Tpt_in", 0, nullptr, &csv.p) == TC_OK);
        CHECK(csv.view().rfind("series_label,x,y\n", 0) == 0);
    }

    Str csv;
    CHECK(tc_plotdata("forecast_overlay", path.c_str(), "Tpt_in", 0, dir.path().string().c_str(),
                      &csv.p) == TC_ERR_DATA);
    CHECK(std::string(tc_last_error_kind()) == "MissingArtifact");
}

TEST_CASE("dedupe keeps first occurrences and reports what it removed") {
    test_util::TempDir dir;
    const std::string in_path = dir.file("rows.csv").string();
    const std::string out_path = dir.file("clean.csv").string();
    test_util::write_text(in_path, "a,b\n1,2\n3,4\n1,2\n5,6\n");

    Str summary;
    REQUIRE(tc_dedupe_csv(in_path.c_str(), out_path.c_str(), &summary.p) == TC_OK);
    CHECK(summary.view().find("1") != std::string::npos);  // one duplicate removed
    CHECK(test_util::read_text(out_path) == "a,b\n1,2\n3,4\n5,6\n");
}

TEST_CASE("pca fits a tabular file and projects it") {
    test_util::TempDir dir;
    const std::string path = dir.file("feat.csv").string();
    std::string body = "f1,f2,f3\n";
    for (int i = 0; i < 30; ++i) {
        const double t = i;
        body += std::to_string(t) + "," + std::to_string(2.0 * t + (i % 3)) + "," +
                std::to_string(-t + (i % 5)) + "\n";
    }
    test_util::write_text(path, body);

    tc_pca* p = nullptr;
    REQUIRE(tc_pca_fit_csv(path.c_str(), &p) == TC_OK);
    REQUIRE(tc_pca_n_features(p) == 3);

    Str model;
    REQUIRE(tc_pca_model_json(p, &model.p) == TC_OK);
    const auto j = nlohmann::json::parse(model.view());
    CHECK(j.at("components").size() == 9);  // 3x3, row-major
    CHECK(j.at("eigenvalues").size() == 3);

    Str explained;
    REQUIRE(tc_pca_explained_json(p, &explained.p) == TC_OK);
    const auto ej = nlohmann::json::parse(explained.view());
    double total = 0.0;
    for (const auto& r : ej.at("explained_variance")) { total += r.get<double>(); }
    CHECK(total == doctest::Approx(1.0));

    Str projected;
    REQUIRE(tc_pca_transform_csv(p, path.c_str(), 2, &projected.p) == TC_OK);
    CHECK(projected.view().rfind("pc1,pc2\n", 0) == 0);

    Str bad;
    CHECK(tc_pca_transform_csv(p, path.c_str(), 7, &bad.p) == TC_ERR_USAGE);

    tc_pca_free(p);
}
