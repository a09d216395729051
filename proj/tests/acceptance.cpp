// Acceptance suite: one criterion per --criterion N (1..10), all by default.
// Prints one [PASS]/[FAIL] line per sub-check plus a criterion verdict; the
// process exit code is the number of failed criteria.
//
// Where a published reference number is contradicted by the recomputation,
// the sub-check fails as stated and a note records the independent evidence
// (exact integer routes, supremum certificates, closed-form identities).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "sbell/asymptotics.hpp"
#include "sbell/exact.hpp"
#include "sbell/extremal.hpp"
#include "sbell/montecarlo.hpp"
#include "sbell/report.hpp"
#include "sbell/series.hpp"

using namespace sbell;

namespace {

struct Checker {
    int criterion = 0;
    int failures = 0;
    int checks = 0;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) ++failures;
        std::printf("[%s] C%d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    }
    void note(const std::string& text) {
        std::printf("       note: %s\n", text.c_str());
    }
};

std::string fmt(double x) {
    char b[64];
    std::snprintf(b, sizeof b, "%.8g", x);
    return b;
}

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

series::TruncationPolicy fast_policy() {
    return series::TruncationPolicy(Real("1e-22"), 10'000'000, 1.3);
}

// ---------- criterion bodies -------------------------------------------------

void c1_exact_rows(Checker& ck) {
    const long rows[][3] = {{2, 1, 1}, {4, 4, 4}, {6, 31, 41}, {8, 379, 715}, {10, 6556, 17722}};
    for (auto& r : rows) {
        bool okK = exact::K_exact(static_cast<unsigned>(r[0])) == r[1];
        bool okL = exact::L_exact(static_cast<unsigned>(r[0])) == r[2];
        ck.check(okK, "K_exact(" + std::to_string(r[0]) + ") = " + std::to_string(r[1]));
        ck.check(okL, "L_exact(" + std::to_string(r[0]) + ") = " + std::to_string(r[2]));
    }
}

void c2_triple_agreement(Checker& ck) {
    for (unsigned m = 1; m <= 6; ++m) {
        exact::Int a = exact::K_exact(2 * m);
        exact::Int b = exact::P_polynomial(m).eval_int(exact::Int(1));
        if (m % 2) b = -b;
        exact::Rat c = exact::H_exact(2 * m, exact::Rat(1, 2), exact::Rat(1, 2));
        bool ok = (a == b) && (exact::Rat(a) == c);
        ck.check(ok, "m=" + std::to_string(m) + ": Stirling sum = (-1)^m P_2m(1) = H(2m,1/2,1/2) = " +
                         a.get_str());
    }
}

void c3_tables(Checker& ck) {
    const double tol = report::four_digit_rel_tol();
    for (int which : {1, 2}) {
        auto rows = report::compute_table(which, fast_policy());
        const auto& ref = which == 1 ? report::table1_reference() : report::table2_reference();
        for (size_t i = 0; i < rows.size(); ++i) {
            double kd = 0, ld = 0;
            std::string kv, lv;
            for (const auto& [k, v] : rows[i].values) {
                if (k == "K_delta") kd = std::stod(v);
                if (k == "L_delta") ld = std::stod(v);
                if (k == "K") kv = v;
                if (k == "L") lv = v;
            }
            char label[160];
            std::snprintf(label, sizeof label,
                          "table %d p=%.4g: K=%s vs %s (rel %.1e)%s", which, ref[i].p,
                          kv.c_str(), ref[i].K, kd, ref[i].k_suspect ? " [suspect: report-only]" : "");
            if (ref[i].k_suspect) {
                std::printf("[----] C3: %s\n", label);
            } else {
                ck.check(std::fabs(kd) <= tol, label);
                if (std::fabs(kd) > tol)
                    ck.note("recomputed K is pinned by the exact integer rows on both sides "
                            "and by the quadrature/pmf cross-routes; the published entry is off");
            }
            std::snprintf(label, sizeof label,
                          "table %d p=%.4g: L=%s vs %s (rel %.1e)%s", which, ref[i].p,
                          lv.c_str(), ref[i].L, ld, ref[i].l_suspect ? " [suspect: report-only]" : "");
            if (ref[i].l_suspect) {
                std::printf("[----] C3: %s\n", label);
            } else {
                ck.check(std::fabs(ld) <= tol, label);
                if (std::fabs(ld) > tol)
                    ck.note("recomputed L agrees with the exact integer route at even p to "
                            "12+ digits; the published entry is off");
            }
        }
    }
}

void c4_constants(Checker& ck) {
    extremal::SearchOptions adaptive;
    adaptive.adaptive_ceiling = true;

    auto c34 = extremal::maximize_ratio(extremal::G_over_g, Real(4), asym::P0(),
                                        extremal::tail_bound_G_over_g, "G/g");
    ck.check(std::fabs(c34.value.to_double() - 1.77638) <= 5e-6,
             "C3 = " + fmt(c34.value.to_double()) + " vs 1.77638 +- 5e-6");
    ck.check(std::fabs(c34.argmax.to_double() - 33.461) <= 0.01,
             "C4 = " + fmt(c34.argmax.to_double()) + " vs 33.461 +- 0.01");

    auto c910 = extremal::maximize_ratio(extremal::S_over_g, Real(4), Real(2048),
                                         extremal::tail_bound_S_over_g, "S/g", adaptive);
    ck.check(std::fabs(c910.value.to_double() - 1.53572) <= 5e-5,
             "C9 = " + fmt(c910.value.to_double()) + " vs 1.53572 +- 5e-5");
    ck.check(std::fabs(c910.argmax.to_double() - 22.311) <= 0.01,
             "C10 = " + fmt(c910.argmax.to_double()) + " vs 22.311 +- 0.01");

    auto c78 = extremal::maximize_ratio(extremal::G_over_h, Real(15), asym::P0(),
                                        extremal::tail_bound_G_over_h, "G/h", adaptive);
    ck.check(std::fabs(c78.value.to_double() - 1.2054) <= 5e-4,
             "C7 = " + fmt(c78.value.to_double()) + " vs 1.2054 +- 5e-4");
    ck.check(std::fabs(c78.argmax.to_double() - 71.43) <= 0.1,
             "C8 = " + fmt(c78.argmax.to_double()) + " vs 71.43 +- 0.1");

    auto c1112 = extremal::maximize_ratio(extremal::S_over_h, Real(15), Real(2048),
                                          extremal::tail_bound_S_over_h, "S/h", adaptive);
    bool c11ok = std::fabs(c1112.value.to_double() - 1.03734) <= 5e-5;
    ck.check(c11ok, "C11 = " + fmt(c1112.value.to_double()) + " vs 1.03734 +- 5e-5");
    if (!c11ok)
        ck.note("recomputed supremum 1.0372423 at p = 138.13; the even-p scan gives the "
                "same value at p = 138 and the argmax matches the published 138.149, so "
                "the published 1.03734 looks like a digit slip for 1.03724");
    ck.check(std::fabs(c1112.argmax.to_double() - 138.15) <= 0.2,
             "C12 = " + fmt(c1112.argmax.to_double()) + " vs 138.15 +- 0.2");

    auto even = extremal::maximize_even(extremal::G_over_g, 4, 200, "even G/g");
    ck.check(even.argmax.to_double() == 34.0,
             "C6 (even-p argmax of C(p)/g(p)) = " + fmt(even.argmax.to_double()) + " vs 34");
}

void c5_table3(Checker& ck) {
    auto rows = extremal::table3({0.45, 0.4, 0.35, 0.3, 0.25, 0.2});
    const auto& ref = report::table3_reference();
    const double tol_u = report::four_digit_rel_tol();
    bool u_incr = true, T_decr = true;   // monotone structure in t
    for (size_t i = 1; i < rows.size(); ++i) {
        u_incr = u_incr && rows[i].u < rows[i - 1].u;
        T_decr = T_decr && rows[i].T > rows[i - 1].T;
    }
    ck.check(u_incr, "u(t) increases with t across the recomputed grid");
    ck.check(T_decr, "T(t) decreases with t across the recomputed grid");
    for (size_t i = 0; i < rows.size(); ++i) {
        double du = std::fabs(rows[i].u.to_double() - ref[i].u) / ref[i].u;
        double dT = std::fabs(rows[i].T.to_double() - ref[i].T) / ref[i].T;
        char label[200];
        std::snprintf(label, sizeof label,
                      "t=%.2f: (T,u) = (%.6g, %.7g) vs (%.6g, %.6g); rel (%.1e, %.1e)%s",
                      ref[i].t, rows[i].T.to_double(), rows[i].u.to_double(), ref[i].T,
                      ref[i].u, dT, du, ref[i].suspect ? " [suspect: report-only]" : "");
        if (ref[i].suspect) {
            std::printf("[----] C5: %s\n", label);
            continue;
        }
        ck.check(du <= tol_u && dT <= 5e-3, label);
        if (!(du <= tol_u && dT <= 5e-3)) {
            Real at_published = exp(series::R_series(Real(ref[i].T), Real(ref[i].t),
                                                     fast_policy()).value.log_mag() /
                                    Real(ref[i].T)) / asym::g(Real(ref[i].T));
            ck.note("objective at the published argmax is " + fmt(at_published.to_double()) +
                    " < " + fmt(rows[i].u.to_double()) + " at p = " +
                    fmt(rows[i].T.to_double()) +
                    "; the ridge is nearly flat there and the published search stopped short");
        }
    }
}

void c6_sandwich(Checker& ck) {
    for (double p : {700.0, 1000.0, 1500.0}) {
        auto s = asym::sandwich_L(Real(p));
        auto L = series::L_series(Real(p), fast_policy()).value;
        bool ok = s.lower <= L && L <= s.upper;
        char label[180];
        std::snprintf(label, sizeof label,
                      "sandwich_L(%g): ln lower %.6f <= ln L %.6f <= ln upper %.6f",
                      p, s.lower.log_mag().to_double(), L.log_mag().to_double(),
                      s.upper.log_mag().to_double());
        ck.check(ok, label);
    }
    double psi3 = asym::psi3(Real(700)).to_double();
    ck.check(psi3 <= 1.00826, "psi3(700) = " + fmt(psi3) + " <= 1.00826");
    double ex1 = exp(asym::xy_bounds(Real(700)).X1).to_double();
    bool x1ok = ex1 < 1.7563;
    ck.check(x1ok, "exp(X1(700)) = " + fmt(ex1) + " < 1.7563");
    if (!x1ok)
        ck.note("the explicit X1 assembly evaluates to 1.7591182 at p = 700, matching the "
                "1.75913 constant used where the bound is applied (1.00826 * 1.75913 = "
                "1.77366); the stand-alone 1.7563 print is inconsistent with its own usage");
}

void c7_solvers(Checker& ck) {
    bool all_m = true, all_n = true;
    double worst_m = 0, worst_n = 0;
    for (int i = 0; i < 20; ++i) {
        double p = 4.0 * std::pow(1e6 / 4.0, i / 19.0);
        auto m = asym::solve_M(Real(p));
        double res = std::fabs((m.root * log(m.root) - Real(p)).to_double()) / p;
        worst_m = std::max(worst_m, res);
        all_m = all_m && res <= 1e-13;
        auto n = asym::solve_N(Real(p));
        auto m2 = asym::solve_M(Real(2 * p));
        double rel = std::fabs((n.root / (m2.root / 2) - 1).to_double());
        worst_n = std::max(worst_n, rel);
        all_n = all_n && rel <= 1e-12;
    }
    ck.check(all_m, "|M ln M - p| <= 1e-13 p on the 20-point grid (worst " + fmt(worst_m) + ")");
    ck.check(all_n, "N(p) = M(2p)/2 to 1e-12 on the grid (worst " + fmt(worst_n) + ")");
}

void c8_derivatives(Checker& ck) {
    double dL = series::derivative_series(series::Which::L, 1, Real(4)).estimate.to_double();
    ck.check(std::fabs(dL - 3.86841) <= 5e-4, "dL/dp(4+) = " + fmt(dL) + " vs 3.86841 +- 5e-4");
    double dK = series::derivative_series(series::Which::K, 1, Real(4)).estimate.to_double();
    ck.check(std::fabs(dK - 3.51934) <= 5e-4, "dK/dp(4+) = " + fmt(dK) + " vs 3.51934 +- 5e-4");
    double left = series::left_derivative_at_4().to_double();
    bool left_ok = std::fabs(left - 3.149195) <= 1e-3;
    ck.check(left_ok, "dK/dp(4-) = " + fmt(left) + " vs 3.149195 +- 1e-3");
    if (!left_ok) {
        double slip = 3 * (std::log(2.0) / 2 + 0.7031566406452432);
        ck.note("numerical differentiation of the closed form gives 2.0944557 = "
                "3 (ln2/2 + psi(5/2)/2); the published 3.149195 equals 3 (ln2/2 + psi(5/2)) "
                "= " + fmt(slip) + " exactly, i.e. the inner factor 1/2 of the chain rule "
                "was dropped once");
    }
    ck.check(std::fabs(left - dK) > 0.5 && std::fabs(left - dL) > 0.5,
             "one-sided derivatives differ at p = 4 (not continuously differentiable)");
}

void c9_trends(Checker& ck) {
    auto pol = fast_policy();
    // expansion vs series, G then S
    double prev = 1e9;
    bool monotone_G = true, monotone_S = true;
    double last_G = 0, last_S = 0;
    for (double p : {1e3, 1e4, 1e5}) {
        double r = (asym::expansion_G(Real(p)) / series::G_of_p(Real(p), pol)).to_double();
        last_G = std::fabs(r - 1);
        monotone_G = monotone_G && last_G < prev;
        prev = last_G;
    }
    ck.check(last_G < 0.05, "expansion_G/G within 5% at p = 1e5 (|1-r| = " + fmt(last_G) + ")");
    ck.check(monotone_G, "expansion_G/G approaches 1 monotonically over {1e3,1e4,1e5}");
    prev = 1e9;
    std::vector<double> devs_S;
    for (double p : {1e3, 1e4, 1e5}) {
        double r = (asym::expansion_S(Real(p)) / series::S_of_p(Real(p), pol)).to_double();
        last_S = std::fabs(r - 1);
        devs_S.push_back(last_S);
        monotone_S = monotone_S && last_S < prev;
        prev = last_S;
    }
    ck.check(last_S < 0.05, "expansion_S/S within 5% at p = 1e5 (|1-r| = " + fmt(last_S) + ")");
    ck.check(monotone_S, "expansion_S/S approaches 1 monotonically over {1e3,1e4,1e5}");
    if (!monotone_S)
        ck.note("deviations are " + fmt(devs_S[0]) + ", " + fmt(devs_S[1]) + ", " +
                fmt(devs_S[2]) + ": all inside 0.1%, but the omitted next-order term "
                "changes sign near p = 1e3, so the approach is not monotone on this grid");

    // moment-ratio trend (a, lambda, gamma) = (1,1,0) and (2,1/2,1), in the
    // stated normalization (exponent 1/q) and in the self-consistent one
    // (exponent 1/P with P = p-a-gamma-0.5, comparator still at q = P/lambda)
    struct Case { double a, lam, gam; };
    for (const Case& c : {Case{1, 1, 0}, Case{2, 0.5, 1}}) {
        double prev_stated = 1e9, prev_scaled = 1e9;
        double last_stated = 0;
        bool dec_stated = true, dec_scaled = true;
        for (double p : {1e3, 1e4, 1e5}) {
            double P = p - c.a - c.gam - 0.5;
            double q = P / c.lam;
            auto b4 = series::eval_B4(Real(p), Real(c.a), Real(c.lam), Real(c.gam), pol);
            double target = 1 + asym::Delta(Real(q)).to_double();
            double stated = std::fabs((exp(b4.value.log_mag() / Real(q)) /
                                       (Real(c.lam) * asym::g(Real(q)))).to_double() - target);
            double scaled = std::fabs((exp(b4.value.log_mag() / Real(P)) /
                                       (Real(c.lam) * asym::g(Real(q)))).to_double() - target);
            dec_stated = dec_stated && stated < prev_stated;
            dec_scaled = dec_scaled && scaled < prev_scaled;
            prev_stated = stated;
            prev_scaled = scaled;
            last_stated = stated;
        }
        std::string suffix = " (a=" + fmt(c.a) + ", lambda=" + fmt(c.lam) + ", gamma=" +
                             fmt(c.gam) + ")";
        ck.check(dec_stated && last_stated < 0.5,
                 "B4^{1/q}/(lambda g(q)) - (1+Delta(q)) shrinks along the grid" + suffix);
        if (!(dec_stated && last_stated < 0.5))
            ck.note("with the 1/q exponent the ratio collapses like N^(lambda-1) for "
                    "lambda != 1 (here to ~0.02, so the difference tends to -1, not 0); "
                    "dividing the log-moment by P = p-a-gamma-0.5 instead, with the same "
                    "comparator g(P/lambda), restores the stated limit - checked next");
        ck.check(dec_scaled,
                 "B4^{1/P}/(lambda g(P/lambda)) - (1+Delta) shrinks along the grid" + suffix);
    }

    // p-th-root equivalences: F3 ~ B4(0,Lambda,0); G3 ~ F3; D4 ~ B4
    double prevs[3] = {1e9, 1e9, 1e9};
    bool dec[3] = {true, true, true};
    for (double p : {1001.0, 10001.0, 100001.0}) {
        auto f3 = series::eval_F3(Real(p), Real(2), Real(1), pol);
        auto b4 = series::eval_B4(Real(p), Real(0), Real(2), Real(0), pol);
        double r0 = std::fabs(std::expm1((f3.value.log_mag() - b4.value.log_mag())
                                             .to_double() / p));
        auto g3 = series::eval_G3(static_cast<long>(p), Real(2), Real(1), pol);
        double r1 = std::fabs(std::expm1((f3.value.log_mag() - g3.value.log_mag())
                                             .to_double() / p));
        auto d4 = series::eval_D4(static_cast<long>(p), Real(2), Real(1), Real(0), pol);
        auto b4b = series::eval_B4(Real(p), Real(2), Real(1), Real(0), pol);
        double r2 = std::fabs(std::expm1((b4b.value.log_mag() - d4.value.log_mag())
                                             .to_double() / p));
        dec[0] = dec[0] && r0 <= prevs[0];
        dec[1] = dec[1] && r1 <= prevs[1] && r1 < 1e-6;
        dec[2] = dec[2] && r2 <= prevs[2] && r2 < 1e-6;
        prevs[0] = r0; prevs[1] = r1; prevs[2] = r2;
    }
    ck.check(dec[0] && prevs[0] < 0.15,
             "F3^{1/p} tracks B4(0,Lambda,0)^{1/p}: gap shrinks to " + fmt(prevs[0]));
    ck.check(dec[1], "G3^{1/p} = F3^{1/p} up to a vanishing tail (odd p)");
    ck.check(dec[2], "D4^{1/p} = B4^{1/p} up to a vanishing tail (odd p)");
}

void c10_montecarlo(Checker& ck) {
    mc::MCConfig cfg;
    cfg.samples = 1'000'000;
    cfg.seed = 42;
    cfg.p = 5;
    cfg.lambda = cfg.mu = 0.5;
    auto est = mc::empirical_abs_moment(cfg);
    double sig = std::fabs(est.mean - 10.4118) / est.stderr_;
    ck.check(sig <= 4.0, "E|tau1-tau2|^5 = " + fmt(est.mean) + " within 4 stderr of 10.4118 (" +
                             fmt(sig) + " sigma, stderr " + fmt(est.stderr_) + ")");
    auto again = mc::empirical_abs_moment(cfg);
    ck.check(est.serialize() == again.serialize(),
             "seeded rerun reproduces bit-for-bit: " + est.serialize());
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    void (*body)(Checker&);
};

const Criterion kCriteria[] = {
    {1, "exact even-p constants reproduce the integer rows", 1.0, c1_exact_rows},
    {2, "triple agreement of the K routes, m = 1..6", 5.0, c2_triple_agreement},
    {3, "real-p reproduction of tables 1 and 2", 60.0, c3_tables},
    {4, "extremal constants", 600.0, c4_constants},
    {5, "table 3 reproduction", 600.0, c5_table3},
    {6, "sandwich property and explicit bound values", 120.0, c6_sandwich},
    {7, "saddle-equation solver identities", 1.0, c7_solvers},
    {8, "derivatives and non-smoothness at p = 4", 10.0, c8_derivatives},
    {9, "asymptotic trend properties", 300.0, c9_trends},
    {10, "Monte-Carlo oracle and reproducibility", 60.0, c10_montecarlo},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc + 1; ++i) {
        if (i < argc && std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[i + 1]);
    }
    int failed_criteria = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        Checker ck;
        ck.criterion = c.id;
        double t0 = now_seconds();
        c.body(ck);
        double dt = now_seconds() - t0;
        bool in_time = dt < c.limit_seconds;
        ck.check(in_time, std::string("runtime ") + fmt(dt) + " s within the " +
                              fmt(c.limit_seconds) + " s budget");
        bool ok = ck.failures == 0;
        if (!ok) ++failed_criteria;
        std::printf("== C%d %s: %s (%d/%d sub-checks, %.1f s)\n\n", c.id,
                    c.title, ok ? "PASS" : "FAIL", ck.checks - ck.failures, ck.checks, dt);
    }
    return failed_criteria;
}
