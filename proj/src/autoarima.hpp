#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arima.hpp"
#include "series.hpp"

namespace tc {

struct TraceEntry {
    ModelOrder order;
    double aic = 0.0;  // NaN when the fit failed
    double fit_seconds = 0.0;
    bool ok = false;
};

struct SearchTrace {
    std::vector<TraceEntry> entries;
    ModelOrder best;
    double total_seconds = 0.0;
};

/// Smallest d in 0..max_d whose d-times-differenced series passes the ADF
/// test at `alpha`; max_d when none does.
int select_d(const TimeSeries& series, int max_d = 2, double alpha = 0.05);

/// Stepwise AIC search over non-seasonal orders. Evaluates the starting
/// candidates (2,d,2), (0,d,0), (1,d,0), (0,d,1) with intercept, then
/// repeatedly perturbs the incumbent by {p +/- 1, q +/- 1, intercept
/// toggle} within [0, max_p] x [0, max_q], never refitting a candidate.
/// Stops when no neighbor beats the incumbent. Ties break toward fewer
/// parameters, then lower p, then lower q. Failed fits are recorded in the
/// trace and skipped. Error kind: AllCandidatesFailed.
std::pair<ArimaFit, SearchTrace> stepwise_search(const TimeSeries& series,
                                                 std::optional<int> d = std::nullopt,
                                                 int max_p = 5, int max_q = 5);

/// One line per entry:
///   ARIMA(p,d,q)(P,D,Q)[m] intercept : AIC=<3 dp>, Time=<2 dp> sec
/// (" intercept" omitted without a constant; failed entries print FAILED
/// in place of the AIC), then "Best model: ..." and
/// "Total fit time: <3 dp> seconds".
std::string format_trace(const SearchTrace& trace);

}  // namespace tc
