#include <sstream>
#include <string>
#include <vector>

#include "arima.hpp"
#include "diagnostics.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "report.hpp"
#include "synth.hpp"

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("significant-figure rounding inspects only the first dropped digit") {
    CHECK(tc::format_sig(0.0015987, 2) == "0.0016");   // dropped 9 rounds away
    CHECK(tc::format_sig(0.0695191, 2) == "0.069");    // dropped 5 rounds toward zero
    CHECK(tc::format_sig(0.0015987, 4) == "0.001599");
    CHECK(tc::format_sig(0.0695191, 4) == "0.06952");
    CHECK(tc::format_sig(1.25, 2) == "1.2");           // exactly representable
    CHECK(tc::format_sig(125.0, 2) == "120");          // integers are exact: dropped 5
    CHECK(tc::format_sig(126.0, 2) == "130");          // dropped 6 rounds away
    CHECK(tc::format_sig(-126.0, 2) == "-130");
    CHECK(tc::format_sig(99.7, 2) == "100");           // carry propagates
    CHECK(tc::format_sig(0.0, 3) == "0");
    CHECK(tc::format_sig(43.0, 4) == "43.00");

    CHECK_THROWS_AS(tc::format_sig(1.0, 0), tc::Error);
    CHECK_THROWS_AS(tc::format_sig(1.0, 18), tc::Error);
}

TEST_CASE("fit summary renders the classic three-block layout") {
    tc::SyntheticSpec spec;
    spec.kind = tc::SyntheticKind::ar_process;
    spec.ar_coeffs = {0.6};
    const tc::TimeSeries s = tc::generate_synthetic(spec, 400, 3, 1.0);
    tc::ModelOrder order;
    order.p = 1;
    order.q = 1;
    const tc::ArimaFit fit = tc::fit(s, order);
    const tc::DiagnosticsReport diag = tc::residual_diagnostics(fit.residuals);
    const std::string text = tc::fit_summary_text(fit, diag, "Tpt_in");

    CHECK(text.find("SARIMAX Results") != std::string::npos);
    CHECK(text.find("Dep. Variable:") != std::string::npos);
    CHECK(text.find("Tpt_in") != std::string::npos);
    CHECK(text.find("SARIMAX(1, 0, 1)") != std::string::npos);
    CHECK(text.find("Log Likelihood") != std::string::npos);
    CHECK(text.find("intercept") != std::string::npos);
    CHECK(text.find("ar.L1") != std::string::npos);
    CHECK(text.find("ma.L1") != std::string::npos);
    CHECK(text.find("sigma2") != std::string::npos);
    CHECK(text.find("Ljung-Box (L1) (Q):") != std::string::npos);
    CHECK(text.find("Prob(H) (two-sided):") != std::string::npos);
    CHECK(text.find("[0.025") != std::string::npos);

    for (const std::string& line : lines_of(text)) {
        CHECK(line.size() <= 78);
    }
}

TEST_CASE("fit summary shows seasonal coefficient rows at their lags") {
    tc::SyntheticSpec spec;
    spec.kind = tc::SyntheticKind::seasonal_arima;
    spec.order.p = 1;
    spec.order.P = 1;
    spec.order.m = 12;
    spec.coeffs.ar = {0.4};
    spec.coeffs.seasonal_ar = {0.3};
    spec.order.include_constant = false;
    const tc::TimeSeries s = tc::generate_synthetic(spec, 400, 5, 1.0);
    tc::ModelOrder order;
    order.p = 1;
    order.P = 1;
    order.m = 12;
    order.include_constant = false;
    const tc::ArimaFit fit = tc::fit(s, order);
    const std::string text =
        tc::fit_summary_text(fit, tc::residual_diagnostics(fit.residuals), "y");
    CHECK(text.find("ar.S.L12") != std::string::npos);
    CHECK(text.find("SARIMAX(1, 0, 0)x(1, 0, 0, 12)") != std::string::npos);
    CHECK(text.find("intercept") == std::string::npos);
}

TEST_CASE("diagnostics block uses the fixed key set in both formats") {
    tc::SyntheticSpec spec;
    const tc::TimeSeries s = tc::generate_synthetic(spec, 300, 8, 1.0);
    const tc::DiagnosticsReport diag = tc::residual_diagnostics(s.values());

    const std::string text = tc::diagnostics_text(diag);
    for (const char* key :
         {"Ljung-Box (L1) (Q):", "Prob(Q):", "Jarque-Bera (JB):", "Prob(JB):",
          "Heteroskedasticity (H):", "Prob(H) (two-sided):", "Skew:", "Kurtosis:"}) {
        CHECK(text.find(key) != std::string::npos);
    }

    const std::string json = tc::diagnostics_json(diag);
    for (const char* key :
         {"\"Ljung-Box (L1) (Q)\"", "\"Prob(Q)\"", "\"Jarque-Bera (JB)\"", "\"Prob(JB)\"",
          "\"Heteroskedasticity (H)\"", "\"Prob(H)\"", "\"Skew\"", "\"Kurtosis\""}) {
        CHECK(json.find(key) != std::string::npos);
    }
}

TEST_CASE("speed table text marks gaps and prints slopes at 4 significant figures") {
    tc::SpeedTable table;
    tc::SpeedRow tiny;
    tiny.row_count = 10;
    tiny.skipped = true;
    tc::SpeedRow ok;
    ok.row_count = 1000;
    ok.arima_seconds = 0.123456;
    ok.cnn_seconds = 1.876543;
    ok.arima_ok = true;
    ok.cnn_ok = true;
    tc::SpeedRow broken;
    broken.row_count = 5000;
    broken.arima_seconds = 0.5;
    broken.arima_ok = true;
    broken.cnn_ok = false;
    table.rows = {tiny, ok, broken};
    table.arima_slope = 0.00012345;
    table.cnn_slope = 0.0018765;
    table.ratio_at_max = 15.2;

    const std::string text = tc::speed_table_text(table);
    CHECK(text.find("skipped") != std::string::npos);
    CHECK(text.find("failed") != std::string::npos);
    CHECK(text.find("0.123456") != std::string::npos);
    CHECK(text.find("ARIMA Slope = 0.0001234") != std::string::npos);
    CHECK(text.find("CNN Slope = 0.001876") != std::string::npos);

    const std::string csv = tc::speed_table_csv(table);
    const std::vector<std::string> lines = lines_of(csv);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "row_count,arima_seconds,cnn_seconds,skipped,arima_ok,cnn_ok");
    CHECK(lines[1] == "10,0,0,1,0,0");
}

TEST_CASE("forecast tables put epoch milliseconds alongside the interval columns") {
    tc::ForecastResult fc;
    fc.horizon = 2;
    fc.mean = {10.0, 11.0};
    fc.lower_95 = {8.0, 8.5};
    fc.upper_95 = {12.0, 13.5};
    fc.future_timestamps = {1664319600, 1664323200};  // epoch seconds
    const std::string csv = tc::forecast_csv(fc);
    const std::vector<std::string> lines = lines_of(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "epoch_ms,mean,lower_95,upper_95");
    CHECK(lines[1] == "1664319600000,10,8,12");
    CHECK(lines[2] == "1664323200000,11,8.5,13.5");

    const std::string json = tc::forecast_json(fc);
    CHECK(json.find("1664319600000") != std::string::npos);
    CHECK(json.find("\"mean\"") != std::string::npos);
}

TEST_CASE("tidy plot rows print integral x values as integers") {
    const std::string csv = tc::tidy_csv(
        {{"actual", 1664316000000.0, 1.5}, {"band", 3.0, -0.25}, {"qq", -1.25, 0.5}});
    const std::vector<std::string> lines = lines_of(csv);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "series_label,x,y");
    CHECK(lines[1] == "actual,1664316000000,1.5");
    CHECK(lines[2] == "band,3,-0.25");
    CHECK(lines[3] == "qq,-1.25,0.5");
}
