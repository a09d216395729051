#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "sbell/report.hpp"

using namespace sbell;
using report::OutputRecord;

TEST_SUITE_BEGIN("report");

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TEST_CASE("number formatting: decimal point, scientific beyond 1e6") {
    CHECK(report::format_number(Real(0.25)) == "0.25");
    CHECK(report::format_number(Real(41)) == "41");
    std::string big = report::format_number(Real("2537138636000"));
    CHECK(big.find('e') != std::string::npos);
    CHECK(report::format_number(1549.28).find(',') == std::string::npos);
}

TEST_CASE("json record shape") {
    OutputRecord rec;
    rec.command = "eval";
    rec.inputs = {{"family", "L"}, {"p", "6"}};
    rec.values = {{"value", "41"}};
    rec.provenance = "exact";
    rec.error_estimate = "0";
    std::string j = report::to_json(rec);
    CHECK(j.find("\"command\":\"eval\"") != std::string::npos);
    CHECK(j.find("\"provenance\":\"exact\"") != std::string::npos);
    CHECK(j.find("\"value\":\"41\"") != std::string::npos);
}

TEST_CASE("json record emission re-parses to identical values") {
    auto rows = report::compute_table(2);
    std::string body = report::emit(rows, report::Format::json);
    std::istringstream in(body);
    std::string line;
    size_t idx = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        const auto& rec = rows[idx];
        CHECK(j["command"] == rec.command);
        CHECK(j["provenance"] == rec.provenance);
        for (const auto& [k, v] : rec.inputs) CHECK(j["inputs"][k] == v);
        for (const auto& [k, v] : rec.values) CHECK(j["values"][k] == v);
        ++idx;
    }
    CHECK(idx == rows.size());
}

TEST_CASE("table 1: exact rows are bang-on, deltas expose the bad entries") {
    auto rows = report::compute_table(1);
    REQUIRE(rows.size() == 28);
    REQUIRE(rows.size() == report::table1_reference().size());
    int flagged_non_suspect = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& ref = report::table1_reference()[i];
        double kd = 0, ld = 0;
        bool kflag = false, ksusp = false;
        for (const auto& [k, v] : rows[i].values) {
            if (k == "K_delta") kd = std::fabs(std::stod(v));
            if (k == "L_delta") ld = std::fabs(std::stod(v));
            if (k == "K_flagged") kflag = v == "1";
            if (k == "K_suspect") ksusp = v == "1";
        }
        if (ref.p == std::floor(ref.p) && static_cast<long>(ref.p) % 2 == 0) {
            // published even rows are the exact integers, except where they
            // were rounded to six digits for the E-notation layout
            double k_round = std::string(ref.K).find('e') == std::string::npos ? 1e-9 : 5e-6;
            double l_round = std::string(ref.L).find('e') == std::string::npos ? 1e-9 : 5e-6;
            CHECK(kd < k_round);
            CHECK(ld < l_round);
        }
        if (kflag && !ksusp) ++flagged_non_suspect;
    }
    // the recomputation pins down K mismatches beyond the single tabulated
    // suspect row (7.5, 8.5, 9.5 and marginally 5.5)
    CHECK(flagged_non_suspect >= 3);
}

TEST_CASE("csv emission round-trips the table") {
    auto rows = report::compute_table(2);
    std::string csv = report::emit(rows, report::Format::csv);
    std::istringstream in(csv);
    std::string header;
    REQUIRE(std::getline(in, header));
    auto cols = split_csv(header);
    CHECK(cols.front() == "command");
    size_t row_idx = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto cells = split_csv(line);
        REQUIRE(cells.size() == cols.size());
        // re-assemble and compare against the original record, field by field
        const auto& rec = rows[row_idx];
        size_t c = 1;
        for (const auto& [k, v] : rec.inputs) CHECK(cells[c++] == v);
        for (const auto& [k, v] : rec.values) {
            CHECK(cells[c] == v);
            // numeric cells parse completely: '.' separator, no stray commas
            size_t pos = 0;
            std::stod(cells[c], &pos);
            CHECK(pos == cells[c].size());
            ++c;
        }
        ++row_idx;
    }
    CHECK(row_idx == rows.size());
}

TEST_CASE("reference tables carry the expected suspect flags") {
    int suspects = 0;
    for (const auto& r : report::table1_reference()) {
        if (r.k_suspect) {
            CHECK(r.p == 9.0);
            ++suspects;
        }
        if (r.l_suspect) ++suspects;
    }
    CHECK(suspects == 4);   // K(9) and the repeated-decimal L trio
    int t3 = 0;
    for (const auto& r : report::table3_reference())
        if (r.suspect) {
            CHECK(r.t == 0.25);
            ++t3;
        }
    CHECK(t3 == 1);
}

TEST_SUITE_END();
