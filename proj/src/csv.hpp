#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "series.hpp"

namespace tc {

/// What to do with gaps in the hourly grid: reject the file, or forward-fill
/// whole missing hours with the last seen values.
enum class GapPolicy { strict, forward_fill };

struct SubscriberData {
    TimeSeries incoming;
    TimeSeries outgoing;
};

/// Reads a subscriber CSV with header `time_stamp,ts,Tpt_in,Tpt_out`.
/// `ts` (integer epoch milliseconds) is authoritative; the human-readable
/// `time_stamp` is only validated for parseability (`YYYY-MM-DD H:MM:SS`,
/// hour with or without leading zero). Rows are sorted by ts before the
/// hourly-spacing check. Error kinds: FileNotFound, EmptyFile,
/// MalformedHeader, UnparseableRow (with line number), NonHourlySpacing
/// (with both offending timestamps). forward_fill repairs only gaps that
/// are whole multiples of one hour; duplicates remain an error.
SubscriberData parse_subscriber_csv(const std::string& path,
                                    GapPolicy gap_policy = GapPolicy::strict);

/// Writes the subscriber CSV format. Both series must share timestamps.
/// Values are emitted with shortest round-trip precision so that
/// parse(emit(parse(f))) is exact.
void write_subscriber_csv(const std::string& path, const TimeSeries& incoming,
                          const TimeSeries& outgoing);

/// UTC rendering of epoch milliseconds as `YYYY-MM-DD H:MM:SS` with the
/// hour unpadded, matching the subscriber data's time_stamp column.
std::string format_time_stamp(std::int64_t epoch_ms);

/// Shortest decimal representation that parses back to the same double.
std::string format_full(double v);

/// Header plus rows of string cells; every row has exactly one cell per
/// column name.
struct TabularFrame {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> rows;
};

/// Generic CSV load (first line is the header). Handles double-quoted
/// cells with "" escapes. Error kinds: FileNotFound, EmptyFile,
/// UnparseableRow when a row's cell count differs from the header.
TabularFrame load_frame_csv(const std::string& path);

void write_frame_csv(const std::string& path, const TabularFrame& frame);

struct DedupeResult {
    TabularFrame frame;
    std::size_t removed_count = 0;
    double removed_fraction = 0.0;
};

/// Removes exact-duplicate rows (all cells equal), keeping the first
/// occurrence and the original order.
DedupeResult dedupe_rows(const TabularFrame& frame);

struct NumericMatrix {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;
    std::vector<bool> is_categorical;
};

/// Encodes a frame for numeric analysis. Columns whose names belong to the
/// network-anomaly schema use its declared typing (Timestamp, Network
/// traffic, Port, Cluster numeric; the rest categorical); unknown columns
/// are numeric when every cell parses as a real. Categorical cells become
/// stable integer codes in order of first appearance. Error kind:
/// UnparseableCell when a numeric column holds a non-numeric cell.
NumericMatrix to_numeric_matrix(const TabularFrame& frame);

}  // namespace tc
