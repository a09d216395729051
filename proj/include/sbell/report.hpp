#ifndef SBELL_REPORT_HPP
#define SBELL_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "sbell/real.hpp"
#include "sbell/series.hpp"

namespace sbell::report {

enum class Format { json, csv };

/// One emitted result: every number carries provenance and an error estimate.
struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> values;
    std::string provenance;       // exact | series | asymptotic | monte-carlo
    std::string error_estimate;   // "0" for exact values
};

std::string to_json(const OutputRecord& r);
std::string csv_header(const OutputRecord& r);
std::string csv_row(const OutputRecord& r);
std::string emit(const std::vector<OutputRecord>& records, Format f);

/// Plain decimal with '.' separator; scientific notation beyond 10^6.
std::string format_number(const Real& x, int digits = 12);
std::string format_number(double x);

// ---- published reference tables (with per-entry suspect flags) --------------

struct RefEntry {
    double p;
    const char* K;
    const char* L;
    bool k_suspect;
    bool l_suspect;
};
const std::vector<RefEntry>& table1_reference();
const std::vector<RefEntry>& table2_reference();

struct Ref3Entry {
    double t;
    double T;
    double u;
    bool suspect;
};
const std::vector<Ref3Entry>& table3_reference();

/// Relative agreement threshold implementing "matches to four significant
/// digits".
inline double four_digit_rel_tol() { return 5e-4; }

/// Recompute a published table; rows carry value, paper_value, delta and
/// suspect columns.  Rows are computed in parallel, emitted in order.
std::vector<OutputRecord> compute_table(int which,
                                        const series::TruncationPolicy& policy = {});

} // namespace sbell::report

#endif
