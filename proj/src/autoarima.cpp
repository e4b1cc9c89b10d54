#include "autoarima.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <tuple>

#include "diagnostics.hpp"
#include "errors.hpp"

namespace tc {

int select_d(const TimeSeries& series, int max_d, double alpha) {
    if (max_d < 0) {
        throw Error::usage("BadOrder", "max_d must be non-negative");
    }
    for (int d = 0; d <= max_d; ++d) {
        const std::vector<double> x = difference(series.values(), d);
        if (adf_test(x).p_value < alpha) {
            return d;
        }
    }
    return max_d;
}

namespace {

struct Candidate {
    int p = 0;
    int q = 0;
    bool intercept = true;
};

// Lower AIC wins; exact ties prefer fewer parameters, then lower p, then
// lower q.
bool better(double aic_a, const Candidate& a, double aic_b, const Candidate& b) {
    if (aic_a != aic_b) {
        return aic_a < aic_b;
    }
    const int params_a = a.p + a.q + (a.intercept ? 1 : 0);
    const int params_b = b.p + b.q + (b.intercept ? 1 : 0);
    if (params_a != params_b) {
        return params_a < params_b;
    }
    if (a.p != b.p) {
        return a.p < b.p;
    }
    return a.q < b.q;
}

}  // namespace

std::pair<ArimaFit, SearchTrace> stepwise_search(const TimeSeries& series, std::optional<int> d,
                                                 int max_p, int max_q) {
    if (max_p < 0 || max_q < 0) {
        throw Error::usage("BadOrder", "max_p and max_q must be non-negative");
    }
    const auto search_start = std::chrono::steady_clock::now();
    const int chosen_d = d.has_value() ? *d : select_d(series);

    SearchTrace trace;
    std::set<std::tuple<int, int, bool>> seen;
    std::optional<Candidate> incumbent;
    double incumbent_aic = std::numeric_limits<double>::quiet_NaN();
    std::optional<ArimaFit> incumbent_fit;

    const auto evaluate = [&](const Candidate& cand) {
        if (cand.p < 0 || cand.p > max_p || cand.q < 0 || cand.q > max_q) {
            return;
        }
        if (!seen.emplace(cand.p, cand.q, cand.intercept).second) {
            return;
        }
        ModelOrder order;
        order.p = cand.p;
        order.d = chosen_d;
        order.q = cand.q;
        order.include_constant = cand.intercept;

        TraceEntry entry;
        entry.order = order;
        const auto fit_start = std::chrono::steady_clock::now();
        try {
            ArimaFit fitted = fit(series, order);
            entry.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                              fit_start)
                                    .count();
            entry.aic = fitted.aic;
            entry.ok = true;
            trace.entries.push_back(entry);
            if (!incumbent.has_value() || better(entry.aic, cand, incumbent_aic, *incumbent)) {
                incumbent = cand;
                incumbent_aic = entry.aic;
                incumbent_fit = std::move(fitted);
            }
        } catch (const Error&) {
            entry.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                              fit_start)
                                    .count();
            entry.aic = std::numeric_limits<double>::quiet_NaN();
            entry.ok = false;
            trace.entries.push_back(entry);
        }
    };

    evaluate({2, 2, true});
    evaluate({0, 0, true});
    evaluate({1, 0, true});
    evaluate({0, 1, true});
    if (!incumbent.has_value()) {
        throw Error::numeric("AllCandidatesFailed", "no starting candidate could be fitted");
    }

    while (true) {
        const Candidate center = *incumbent;
        evaluate({center.p + 1, center.q, center.intercept});
        evaluate({center.p - 1, center.q, center.intercept});
        evaluate({center.p, center.q + 1, center.intercept});
        evaluate({center.p, center.q - 1, center.intercept});
        evaluate({center.p, center.q, !center.intercept});
        const bool moved = incumbent->p != center.p || incumbent->q != center.q ||
                           incumbent->intercept != center.intercept;
        if (!moved) {
            break;
        }
    }

    trace.best = incumbent_fit->order;
    trace.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - search_start).count();
    return {std::move(*incumbent_fit), std::move(trace)};
}

namespace {

std::string format_order(const ModelOrder& o) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "ARIMA(%d,%d,%d)(%d,%d,%d)[%d]%s", o.p, o.d, o.q, o.P, o.D,
                  o.Q, o.m, o.include_constant ? " intercept" : "");
    return buf;
}

}  // namespace

std::string format_trace(const SearchTrace& trace) {
    if (trace.entries.empty()) {
        throw Error::usage("EmptyTrace", "cannot format an empty search trace");
    }
    std::string out;
    char buf[160];
    for (const TraceEntry& entry : trace.entries) {
        if (entry.ok) {
            std::snprintf(buf, sizeof(buf), "%s : AIC=%.3f, Time=%.2f sec",
                          format_order(entry.order).c_str(), entry.aic, entry.fit_seconds);
        } else {
            std::snprintf(buf, sizeof(buf), "%s : FAILED, Time=%.2f sec",
                          format_order(entry.order).c_str(), entry.fit_seconds);
        }
        out += buf;
        out += '\n';
    }
    out += "Best model: " + format_order(trace.best) + '\n';
    std::snprintf(buf, sizeof(buf), "Total fit time: %.3f seconds", trace.total_seconds);
    out += buf;
    out += '\n';
    return out;
}

}  // namespace tc
