#include <cstdlib>
#include <string>
#include <vector>

#include "csv.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "rng.hpp"
#include "series.hpp"
#include "test_util.hpp"

using test_util::TempDir;

namespace {

std::string subscriber_text(const std::vector<double>& in_values, std::int64_t start_ms) {
    std::string text = "time_stamp,ts,Tpt_in,Tpt_out\n";
    for (std::size_t i = 0; i < in_values.size(); ++i) {
        const std::int64_t ts = start_ms + static_cast<std::int64_t>(i) * tc::kHourMs;
        text += tc::format_time_stamp(ts) + "," + std::to_string(ts) + "," +
                tc::format_full(in_values[i]) + "," + tc::format_full(in_values[i] * 2.0) + "\n";
    }
    return text;
}

}  // namespace

TEST_CASE("subscriber CSV parse -> emit -> parse is a fixpoint") {
    TempDir dir;
    tc::Rng rng(11);
    std::vector<double> values(48);
    for (double& v : values) {
        v = 1e9 * (1.0 + 0.25 * rng.normal());
    }
    test_util::write_text(dir.file("a.csv"), subscriber_text(values, 1664316000000));

    const tc::SubscriberData first = tc::parse_subscriber_csv(dir.file("a.csv").string());
    REQUIRE(first.incoming.size() == values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(first.incoming.value_at(i) == values[i]);
        CHECK(first.outgoing.value_at(i) == values[i] * 2.0);
    }
    CHECK(first.incoming.name() == "Tpt_in");
    CHECK(first.incoming.spacing_ms() == tc::kHourMs);

    tc::write_subscriber_csv(dir.file("b.csv").string(), first.incoming, first.outgoing);
    const tc::SubscriberData second = tc::parse_subscriber_csv(dir.file("b.csv").string());
    tc::write_subscriber_csv(dir.file("c.csv").string(), second.incoming, second.outgoing);
    CHECK(test_util::read_text(dir.file("b.csv")) == test_util::read_text(dir.file("c.csv")));
    for (std::size_t i = 0; i < values.size(); ++i) {
        CHECK(second.incoming.value_at(i) == values[i]);
    }
}

TEST_CASE("rows arrive unsorted but ts is authoritative") {
    TempDir dir;
    std::string text = "time_stamp,ts,Tpt_in,Tpt_out\n";
    text += "2022-09-28 0:00:00,1664323200000,3,30\n";
    text += "2022-09-27 22:00:00,1664316000000,1,10\n";
    text += "2022-09-27 23:00:00,1664319600000,2,20\n";
    test_util::write_text(dir.file("shuffled.csv"), text);
    const tc::SubscriberData data = tc::parse_subscriber_csv(dir.file("shuffled.csv").string());
    CHECK(data.incoming.values() == std::vector<double>{1.0, 2.0, 3.0});
}

TEST_CASE("hourly gaps are a hard error unless forward-fill is requested") {
    TempDir dir;
    std::string text = "time_stamp,ts,Tpt_in,Tpt_out\n";
    text += "2022-09-27 22:00:00,1664316000000,1,10\n";
    text += "2022-09-27 23:00:00,1664319600000,2,20\n";
    text += "2022-09-28 2:00:00,1664330400000,5,50\n";  // 3-hour jump
    test_util::write_text(dir.file("gap.csv"), text);

    CHECK_THROWS_WITH_AS(tc::parse_subscriber_csv(dir.file("gap.csv").string()),
                         doctest::Contains("1664319600000"), tc::Error);

    const tc::SubscriberData repaired =
        tc::parse_subscriber_csv(dir.file("gap.csv").string(), tc::GapPolicy::forward_fill);
    REQUIRE(repaired.incoming.size() == 5);
    CHECK(repaired.incoming.values() == std::vector<double>{1.0, 2.0, 2.0, 2.0, 5.0});
    CHECK(repaired.outgoing.values() == std::vector<double>{10.0, 20.0, 20.0, 20.0, 50.0});
}

TEST_CASE("duplicate timestamps stay an error even with forward-fill") {
    TempDir dir;
    std::string text = "time_stamp,ts,Tpt_in,Tpt_out\n";
    text += "2022-09-27 22:00:00,1664316000000,1,10\n";
    text += "2022-09-27 22:00:00,1664316000000,1,10\n";
    test_util::write_text(dir.file("dup.csv"), text);
    CHECK_THROWS_AS(
        tc::parse_subscriber_csv(dir.file("dup.csv").string(), tc::GapPolicy::forward_fill),
        tc::Error);
}

TEST_CASE("bad header and malformed rows report their location") {
    TempDir dir;
    test_util::write_text(dir.file("h.csv"), "time,ts,a,b\n1,2,3,4\n");
    try {
        tc::parse_subscriber_csv(dir.file("h.csv").string());
        FAIL("expected MalformedHeader");
    } catch (const tc::Error& e) {
        CHECK(e.kind() == "MalformedHeader");
    }

    test_util::write_text(dir.file("r.csv"),
                          "time_stamp,ts,Tpt_in,Tpt_out\n"
                          "2022-09-27 22:00:00,1664316000000,1,10\n"
                          "2022-09-27 23:00:00,not_a_number,2,20\n");
    CHECK_THROWS_WITH_AS(tc::parse_subscriber_csv(dir.file("r.csv").string()),
                         doctest::Contains("line 3"), tc::Error);
}

TEST_CASE("time stamps render in UTC with an unpadded hour") {
    CHECK(tc::format_time_stamp(1664316000000) == "2022-09-27 22:00:00");
    CHECK(tc::format_time_stamp(1664316000000 + 5 * tc::kHourMs) == "2022-09-28 3:00:00");
}

TEST_CASE("format_full round-trips doubles exactly") {
    tc::Rng rng(3);
    std::vector<double> cases{0.0,     1.0,     -1.0,       0.1,   1.0 / 3.0,
                              1e-300,  1e300,   123456789.0, 2.5e9, -7.25};
    for (int i = 0; i < 50; ++i) {
        cases.push_back(rng.normal() * std::pow(10.0, static_cast<double>(i % 30) - 15.0));
    }
    for (double v : cases) {
        const std::string text = tc::format_full(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("generic frames handle quoted cells and reject ragged rows") {
    TempDir dir;
    test_util::write_text(dir.file("f.csv"),
                          "a,b,c\n"
                          "1,\"x,y\",3\n"
                          "2,\"he said \"\"hi\"\"\",4\n");
    const tc::TabularFrame frame = tc::load_frame_csv(dir.file("f.csv").string());
    REQUIRE(frame.rows.size() == 2);
    CHECK(frame.rows[0][1] == "x,y");
    CHECK(frame.rows[1][1] == "he said \"hi\"");

    test_util::write_text(dir.file("ragged.csv"), "a,b\n1,2\n3\n");
    CHECK_THROWS_WITH_AS(tc::load_frame_csv(dir.file("ragged.csv").string()),
                         doctest::Contains("line 3"), tc::Error);

    tc::write_frame_csv(dir.file("f2.csv").string(), frame);
    const tc::TabularFrame again = tc::load_frame_csv(dir.file("f2.csv").string());
    CHECK(again.rows == frame.rows);
    CHECK(again.column_names == frame.column_names);
}

TEST_CASE("dedupe keeps first occurrences in order and reports the fraction") {
    tc::TabularFrame frame;
    frame.column_names = {"a", "b"};
    frame.rows = {{"1", "x"}, {"2", "y"}, {"1", "x"}, {"3", "z"}, {"2", "y"}};
    const tc::DedupeResult result = tc::dedupe_rows(frame);
    CHECK(result.removed_count == 2);
    CHECK(result.removed_fraction == doctest::Approx(0.4));
    REQUIRE(result.frame.rows.size() == 3);
    CHECK(result.frame.rows[0] == std::vector<std::string>{"1", "x"});
    CHECK(result.frame.rows[1] == std::vector<std::string>{"2", "y"});
    CHECK(result.frame.rows[2] == std::vector<std::string>{"3", "z"});
}

TEST_CASE("numeric encoding follows the anomaly-schema typing rules") {
    tc::TabularFrame frame;
    frame.column_names = {"Timestamp", "Protocol", "Flag", "Port", "Extra"};
    frame.rows = {{"10", "TCP", "A", "5062", "1.5"},
                  {"20", "UDP", "B", "5061", "2.5"},
                  {"30", "TCP", "A", "5062", "3.5"}};
    const tc::NumericMatrix m = tc::to_numeric_matrix(frame);
    REQUIRE(m.rows.size() == 3);
    CHECK_FALSE(m.is_categorical[0]);  // Timestamp is numeric by schema
    CHECK(m.is_categorical[1]);        // Protocol is categorical by schema
    CHECK(m.is_categorical[2]);
    CHECK_FALSE(m.is_categorical[3]);  // Port is numeric by schema
    CHECK_FALSE(m.is_categorical[4]);  // unknown column, every cell parses

    // Ordinal codes follow first appearance.
    CHECK(m.rows[0][1] == 0.0);  // TCP
    CHECK(m.rows[1][1] == 1.0);  // UDP
    CHECK(m.rows[2][1] == 0.0);  // TCP again
    CHECK(m.rows[1][3] == 5061.0);

    tc::TabularFrame mixed;
    mixed.column_names = {"Unknown"};
    mixed.rows = {{"1"}, {"abc"}};
    const tc::NumericMatrix coded = tc::to_numeric_matrix(mixed);
    CHECK(coded.is_categorical[0]);  // one unparseable cell makes it categorical
    CHECK(coded.rows[0][0] == 0.0);
    CHECK(coded.rows[1][0] == 1.0);

    tc::TabularFrame bad;
    bad.column_names = {"Port"};
    bad.rows = {{"x"}};
    CHECK_THROWS_AS(tc::to_numeric_matrix(bad), tc::Error);  // schema says numeric
}
