#include "sbell/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sbell/exact.hpp"
#include "sbell/extremal.hpp"

namespace sbell::report {

std::string format_number(const Real& x, int digits) {
    if (x.is_zero()) return "0";
    double lx = x.is_finite() ? std::log10(std::fabs(x.to_double())) : 1e9;
    char fmt[32], buf[256];
    if (std::fabs(x.to_double()) >= 1e6 || lx < -6) {
        std::snprintf(fmt, sizeof fmt, "%%.%dRNe", digits - 1);
    } else {
        std::snprintf(fmt, sizeof fmt, "%%.%dRNg", digits);
    }
    mpfr_snprintf(buf, sizeof buf, fmt, x.raw());
    return buf;
}

std::string format_number(double x) {
    char buf[64];
    if (std::fabs(x) >= 1e6)
        std::snprintf(buf, sizeof buf, "%.11e", x);
    else
        std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_json(const OutputRecord& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    nlohmann::ordered_json in = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) in[k] = v;
    j["inputs"] = in;
    nlohmann::ordered_json vals = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.values) vals[k] = v;
    j["values"] = vals;
    j["provenance"] = r.provenance;
    j["error_estimate"] = r.error_estimate;
    return j.dump();
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string csv_header(const OutputRecord& r) {
    std::ostringstream out;
    out << "command";
    for (const auto& [k, v] : r.inputs) out << ',' << csv_escape(k);
    for (const auto& [k, v] : r.values) out << ',' << csv_escape(k);
    out << ",provenance,error_estimate";
    return out.str();
}

std::string csv_row(const OutputRecord& r) {
    std::ostringstream out;
    out << csv_escape(r.command);
    for (const auto& [k, v] : r.inputs) out << ',' << csv_escape(v);
    for (const auto& [k, v] : r.values) out << ',' << csv_escape(v);
    out << ',' << r.provenance << ',' << r.error_estimate;
    return out.str();
}

std::string emit(const std::vector<OutputRecord>& records, Format f) {
    std::ostringstream out;
    if (f == Format::json) {
        for (const auto& r : records) out << to_json(r) << '\n';
    } else {
        if (!records.empty()) out << csv_header(records.front()) << '\n';
        for (const auto& r : records) out << csv_row(r) << '\n';
    }
    return out.str();
}

const std::vector<RefEntry>& table1_reference() {
    static const std::vector<RefEntry> t = {
        {2, "1", "1", false, false},
        {4, "4", "4", false, false},
        {4.5, "6.3358", "6.6712", false, false},
        {5, "10.4118", "11.7358", false, true},
        {5.5, "17.686", "21.538", false, false},
        {6, "31", "41", false, false},
        {6.5, "55.819", "80.5508", false, false},
        {7, "103.22", "162.7358", false, true},
        {7.5, "192.45", "337.176", false, false},
        {8, "379", "715", false, false},
        {8.5, "757.7", "1549.28", false, false},
        {9, "1126.5", "3425.7358", true, true},
        {9.5, "3015.0", "7721.29", false, false},
        {10, "6556", "17722", false, false},
        {10.5, "14000.4", "41385.2", false, false},
        {11, "30403.2", "98253.7", false, false},
        {11.5, "67091.3", "236982", false, false},
        {12, "150349", "580317", false, false},
        {12.5, "341951.2", "1.44191e6", false, false},
        {13, "788891.0", "3.63328e6", false, false},
        {13.5, "1.84518e6", "9.27951e6", false, false},
        {14, "4.37346e6", "2.40112e7", false, false},
        {14.5, "1.04998e7", "6.29176e7", false, false},
        {15, "2.55231e7", "1.66888e8", false, false},
        {15.5, "6.27927e7", "4.47926e8", false, false},
        {16, "1.56298e8", "1.21607e9", false, false},
        {16.5, "3.93475e8", "3.33839e9", false, false},
        {17, "1.00153e9", "9.26407e9", false, false},
    };
    return t;
}

const std::vector<RefEntry>& table2_reference() {
    static const std::vector<RefEntry> t = {
        {17.5, "2.57666e9", "2.59791e10", false, false},
        {18, "6.69849e9", "7.36008e10", false, false},
        {18.5, "1.75916e10", "2.106e11", false, false},
        {19, "4.66582e10", "6.08476e11", false, false},
        {19.5, "1.24952e11", "1.77473e12", false, false},
        {20, "3.37789e11", "5.22427e12", false, false},
        {20.5, "9.21603e11", "1.55177e13", false, false},
        {21, "2.53714e12", "4.64999e13", false, false},
    };
    return t;
}

const std::vector<Ref3Entry>& table3_reference() {
    static const std::vector<Ref3Entry> t = {
        {0.45, 26.228, 1.48566, false},
        {0.4, 32.206, 1.43438, false},
        {0.35, 42.120, 1.3815, false},
        {0.3, 60.67, 1.3281, false},
        {0.25, 102.47, 1.2732, true},
        {0.2, 145.96, 1.2163, false},
    };
    return t;
}

namespace {

void parallel_for(size_t count, const std::function<void(size_t)>& body) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned workers = static_cast<unsigned>(std::min<size_t>(hw, count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool is_even_integer(double p) {
    return p == std::floor(p) && static_cast<long>(p) % 2 == 0;
}

OutputRecord moment_table_row(int which, const RefEntry& ref,
                              const series::TruncationPolicy& policy) {
    OutputRecord rec;
    rec.command = "table";
    rec.inputs = {{"which", std::to_string(which)}, {"p", format_number(ref.p)}};

    std::string kv, lv, err;
    if (is_even_integer(ref.p)) {
        unsigned p = static_cast<unsigned>(ref.p);
        kv = exact::K_exact(p).get_str();
        lv = exact::L_exact(p).get_str();
        rec.provenance = "exact";
        err = "0";
    } else {
        auto K = series::K_series(Real(ref.p), policy);
        auto L = series::L_series(Real(ref.p), policy);
        kv = format_number(K.value.to_real());
        lv = format_number(L.value.to_real());
        rec.provenance = "series";
        Real rel_tail = max((K.tail_bound / K.value.abs()).to_real(),
                            (L.tail_bound / L.value.abs()).to_real());
        err = format_number(rel_tail, 3);
    }
    const double tol = four_digit_rel_tol();
    auto delta_of = [](const std::string& computed, const char* paper) {
        Real c(computed), q(paper);
        return ((c - q) / q).to_double();
    };
    double dk = delta_of(kv, ref.K);
    double dl = delta_of(lv, ref.L);
    rec.values = {
        {"K", kv},
        {"K_paper_value", ref.K},
        {"K_delta", format_number(dk)},
        {"K_suspect", ref.k_suspect ? "1" : "0"},
        {"K_flagged", std::fabs(dk) > tol ? "1" : "0"},
        {"L", lv},
        {"L_paper_value", ref.L},
        {"L_delta", format_number(dl)},
        {"L_suspect", ref.l_suspect ? "1" : "0"},
        {"L_flagged", std::fabs(dl) > tol ? "1" : "0"},
    };
    rec.error_estimate = err;
    return rec;
}

} // namespace

std::vector<OutputRecord> compute_table(int which, const series::TruncationPolicy& policy) {
    if (which == 1 || which == 2) {
        const auto& ref = which == 1 ? table1_reference() : table2_reference();
        std::vector<OutputRecord> rows(ref.size());
        parallel_for(ref.size(), [&](size_t i) {
            rows[i] = moment_table_row(which, ref[i], policy);
        });
        return rows;
    }
    if (which != 3) throw domain_error("compute_table: which must be 1, 2 or 3");

    const auto& ref = table3_reference();
    std::vector<double> ts;
    for (const auto& r : ref) ts.push_back(r.t);
    auto rows = extremal::table3(ts);
    std::vector<OutputRecord> out;
    const double tol = four_digit_rel_tol();
    for (size_t i = 0; i < rows.size(); ++i) {
        OutputRecord rec;
        rec.command = "table";
        rec.inputs = {{"which", "3"}, {"t", format_number(ref[i].t)}};
        double T = rows[i].T.to_double();
        double u = rows[i].u.to_double();
        double dT = (T - ref[i].T) / ref[i].T;
        double du = (u - ref[i].u) / ref[i].u;
        rec.values = {
            {"T", format_number(T)},
            {"T_paper_value", format_number(ref[i].T)},
            {"T_delta", format_number(dT)},
            {"u", format_number(u)},
            {"u_paper_value", format_number(ref[i].u)},
            {"u_delta", format_number(du)},
            {"suspect", ref[i].suspect ? "1" : "0"},
            {"flagged", (std::fabs(du) > tol || std::fabs(dT) > 5e-3) ? "1" : "0"},
        };
        rec.provenance = "series";
        rec.error_estimate = format_number(rows[i].detail.tolerance, 3);
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace sbell::report
