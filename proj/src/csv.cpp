#include "csv.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <string_view>
#include <unordered_map>

#include "errors.hpp"

namespace tc {

namespace {

constexpr std::string_view kSubscriberHeader = "time_stamp,ts,Tpt_in,Tpt_out";

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

bool parse_int64(std::string_view text, std::int64_t& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) {
        return false;
    }
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
}

/// `YYYY-MM-DD H:MM:SS`, hour one or two digits, loose range checks.
bool time_stamp_parses(std::string_view s) {
    const std::size_t first_space = s.find(' ');
    if (first_space == std::string_view::npos) {
        return false;
    }
    const std::string_view date = s.substr(0, first_space);
    const std::string_view clock = s.substr(first_space + 1);
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') {
        return false;
    }
    std::int64_t year = 0, month = 0, day = 0;
    if (!all_digits(date.substr(0, 4)) || !all_digits(date.substr(5, 2)) ||
        !all_digits(date.substr(8, 2)) || !parse_int64(date.substr(0, 4), year) ||
        !parse_int64(date.substr(5, 2), month) || !parse_int64(date.substr(8, 2), day)) {
        return false;
    }
    const std::size_t c1 = clock.find(':');
    if (c1 == std::string_view::npos || c1 < 1 || c1 > 2) {
        return false;
    }
    const std::string_view hour_s = clock.substr(0, c1);
    const std::string_view rest = clock.substr(c1 + 1);
    if (rest.size() != 5 || rest[2] != ':') {
        return false;
    }
    std::int64_t hour = 0, minute = 0, second = 0;
    if (!all_digits(hour_s) || !all_digits(rest.substr(0, 2)) || !all_digits(rest.substr(3, 2)) ||
        !parse_int64(hour_s, hour) || !parse_int64(rest.substr(0, 2), minute) ||
        !parse_int64(rest.substr(3, 2), second)) {
        return false;
    }
    return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour <= 23 && minute <= 59 &&
           second <= 59;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"' && cell.empty()) {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    cells.push_back(std::move(cell));
    return cells;
}

std::string quote_if_needed(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) {
        return cell;
    }
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

struct SubscriberRow {
    std::int64_t ts = 0;
    double in_value = 0.0;
    double out_value = 0.0;
};

}  // namespace

std::string format_full(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_time_stamp(std::int64_t epoch_ms) {
    // Civil-date conversion from days since 1970-01-01 (proleptic Gregorian).
    std::int64_t seconds = epoch_ms / 1000;
    if (epoch_ms % 1000 != 0 && epoch_ms < 0) {
        --seconds;
    }
    std::int64_t days = seconds / 86400;
    std::int64_t secs_of_day = seconds % 86400;
    if (secs_of_day < 0) {
        secs_of_day += 86400;
        --days;
    }
    const std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    const std::int64_t year = m <= 2 ? y + 1 : y;
    const std::int64_t hour = secs_of_day / 3600;
    const std::int64_t minute = (secs_of_day % 3600) / 60;
    const std::int64_t second = secs_of_day % 60;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04lld-%02lld-%02lld %lld:%02lld:%02lld",
                  static_cast<long long>(year), static_cast<long long>(m),
                  static_cast<long long>(d), static_cast<long long>(hour),
                  static_cast<long long>(minute), static_cast<long long>(second));
    return buf;
}

SubscriberData parse_subscriber_csv(const std::string& path, GapPolicy gap_policy) {
    std::ifstream file(path);
    if (!file) {
        throw Error::data("FileNotFound", "cannot open " + path);
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw Error::data("EmptyFile", path + " is empty");
    }
    if (strip_cr(line) != kSubscriberHeader) {
        throw Error::data("MalformedHeader", "expected header `" +
                                                 std::string(kSubscriberHeader) + "`, got `" +
                                                 strip_cr(line) + "`");
    }

    std::vector<SubscriberRow> rows;
    std::size_t line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> cells = split_csv_line(line);
        SubscriberRow row;
        const bool ok = cells.size() == 4 && time_stamp_parses(cells[0]) &&
                        parse_int64(cells[1], row.ts) && parse_double(cells[2], row.in_value) &&
                        parse_double(cells[3], row.out_value);
        if (!ok) {
            throw Error::data("UnparseableRow",
                              path + " line " + std::to_string(line_number) + ": `" + line + "`");
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw Error::data("EmptyFile", path + " has no data rows");
    }

    std::stable_sort(rows.begin(), rows.end(),
                     [](const SubscriberRow& a, const SubscriberRow& b) { return a.ts < b.ts; });

    std::vector<SubscriberRow> filled;
    filled.reserve(rows.size());
    filled.push_back(rows.front());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const std::int64_t gap = rows[i].ts - filled.back().ts;
        if (gap == kHourMs) {
            filled.push_back(rows[i]);
            continue;
        }
        const bool repairable =
            gap_policy == GapPolicy::forward_fill && gap > kHourMs && gap % kHourMs == 0;
        if (!repairable) {
            throw Error::data("NonHourlySpacing",
                              "gap of " + std::to_string(gap) + " ms between ts " +
                                  std::to_string(filled.back().ts) + " and " +
                                  std::to_string(rows[i].ts));
        }
        while (filled.back().ts + kHourMs < rows[i].ts) {
            SubscriberRow fill = filled.back();
            fill.ts += kHourMs;
            filled.push_back(fill);
        }
        filled.push_back(rows[i]);
    }

    std::vector<std::int64_t> ts(filled.size());
    std::vector<double> in_values(filled.size());
    std::vector<double> out_values(filled.size());
    for (std::size_t i = 0; i < filled.size(); ++i) {
        ts[i] = filled[i].ts;
        in_values[i] = filled[i].in_value;
        out_values[i] = filled[i].out_value;
    }
    return SubscriberData{
        TimeSeries(ts, std::move(in_values), kHourMs, "Tpt_in"),
        TimeSeries(std::move(ts), std::move(out_values), kHourMs, "Tpt_out"),
    };
}

void write_subscriber_csv(const std::string& path, const TimeSeries& incoming,
                          const TimeSeries& outgoing) {
    if (incoming.size() != outgoing.size() ||
        incoming.timestamps() != outgoing.timestamps()) {
        throw Error::usage("LengthMismatch", "incoming and outgoing series must share timestamps");
    }
    std::ofstream file(path);
    if (!file) {
        throw Error::data("FileNotFound", "cannot write " + path);
    }
    file << kSubscriberHeader << '\n';
    for (std::size_t i = 0; i < incoming.size(); ++i) {
        const std::int64_t ms = incoming.epoch_ms_at(i);
        file << format_time_stamp(ms) << ',' << ms << ',' << format_full(incoming.value_at(i))
             << ',' << format_full(outgoing.value_at(i)) << '\n';
    }
}

TabularFrame load_frame_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error::data("FileNotFound", "cannot open " + path);
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw Error::data("EmptyFile", path + " is empty");
    }
    TabularFrame frame;
    frame.column_names = split_csv_line(strip_cr(line));
    std::size_t line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != frame.column_names.size()) {
            throw Error::data("UnparseableRow",
                              path + " line " + std::to_string(line_number) + ": expected " +
                                  std::to_string(frame.column_names.size()) + " cells, got " +
                                  std::to_string(cells.size()));
        }
        frame.rows.push_back(std::move(cells));
    }
    return frame;
}

void write_frame_csv(const std::string& path, const TabularFrame& frame) {
    std::ofstream file(path);
    if (!file) {
        throw Error::data("FileNotFound", "cannot write " + path);
    }
    for (std::size_t i = 0; i < frame.column_names.size(); ++i) {
        file << (i ? "," : "") << quote_if_needed(frame.column_names[i]);
    }
    file << '\n';
    for (const auto& row : frame.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            file << (i ? "," : "") << quote_if_needed(row[i]);
        }
        file << '\n';
    }
}

DedupeResult dedupe_rows(const TabularFrame& frame) {
    if (frame.rows.empty()) {
        throw Error::usage("EmptyFrame", "dedupe requires a nonempty frame");
    }
    DedupeResult result;
    result.frame.column_names = frame.column_names;
    std::map<std::vector<std::string>, bool> seen;
    for (const auto& row : frame.rows) {
        if (seen.emplace(row, true).second) {
            result.frame.rows.push_back(row);
        } else {
            ++result.removed_count;
        }
    }
    result.removed_fraction =
        static_cast<double>(result.removed_count) / static_cast<double>(frame.rows.size());
    return result;
}

NumericMatrix to_numeric_matrix(const TabularFrame& frame) {
    // Declared typing for the network-anomaly schema; unknown columns fall
    // back to parse-everything inference.
    static const std::map<std::string, bool> kKnownCategorical = {
        {"Timestamp", false},        {"Protocol", true},  {"Flag", true},
        {"IP address", true},        {"Network traffic", false},
        {"Threat", true},            {"Port", false},     {"Expended address", true},
        {"Seed address", true},      {"Cluster", false},  {"Ransomware", true},
        {"Prediction", true},
    };

    const std::size_t n_cols = frame.column_names.size();
    NumericMatrix out;
    out.column_names = frame.column_names;
    out.is_categorical.resize(n_cols, false);

    for (std::size_t c = 0; c < n_cols; ++c) {
        const auto known = kKnownCategorical.find(frame.column_names[c]);
        if (known != kKnownCategorical.end()) {
            out.is_categorical[c] = known->second;
            continue;
        }
        bool all_numeric = true;
        for (const auto& row : frame.rows) {
            double unused = 0.0;
            if (!parse_double(row[c], unused)) {
                all_numeric = false;
                break;
            }
        }
        out.is_categorical[c] = !all_numeric;
    }

    std::vector<std::unordered_map<std::string, double>> codes(n_cols);
    out.rows.reserve(frame.rows.size());
    for (std::size_t r = 0; r < frame.rows.size(); ++r) {
        std::vector<double> row(n_cols, 0.0);
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string& cell = frame.rows[r][c];
            if (out.is_categorical[c]) {
                auto [it, inserted] = codes[c].emplace(cell, static_cast<double>(codes[c].size()));
                row[c] = it->second;
            } else if (!parse_double(cell, row[c])) {
                throw Error::data("UnparseableCell",
                                  "row " + std::to_string(r + 1) + ", column `" +
                                      frame.column_names[c] + "`: `" + cell + "`");
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace tc
