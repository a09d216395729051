// sbell: Schloemilch/Bell series and sharp moment-inequality constants.
//
// Subcommands: eval, table, constants, bounds, mc.  Every emitted number
// carries provenance (exact / series / asymptotic / monte-carlo) and an
// error estimate.  Exit codes: 0 ok, 2 domain error, 3 truncation failure,
// 4 regime error.

#include <cmath>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "sbell/asymptotics.hpp"
#include "sbell/errors.hpp"
#include "sbell/exact.hpp"
#include "sbell/extremal.hpp"
#include "sbell/montecarlo.hpp"
#include "sbell/report.hpp"
#include "sbell/series.hpp"

using namespace sbell;
using report::Format;
using report::OutputRecord;

namespace {

struct GlobalOpts {
    unsigned precision = Real::default_digits();
    std::string rel_tol = "1e-30";
    long max_terms = 10'000'000;
    std::string format = "json";
};

Format parse_format(const std::string& f) {
    if (f == "json") return Format::json;
    if (f == "csv") return Format::csv;
    throw domain_error("--format must be json or csv");
}

series::TruncationPolicy make_policy(const GlobalOpts& g) {
    return series::TruncationPolicy(Real(g.rel_tol), g.max_terms, 3.0);
}

bool is_even_integer(double p) {
    return p >= 2 && p == std::floor(p) && static_cast<long>(p) % 2 == 0;
}

std::string rel_tail(const series::EvalResult& r) {
    if (r.value.is_zero() || r.tail_bound.is_zero()) return "0";
    return report::format_number((r.tail_bound / r.value.abs()).to_real(), 3);
}

int run_eval(const GlobalOpts& g, const std::string& family, double p, double theta,
             double beta, double a, double lambda, double gamma, double t) {
    using Family = series::SeriesSpec::Family;
    OutputRecord rec;
    rec.command = "eval";
    rec.inputs = {{"family", family}, {"p", report::format_number(p)}};

    series::SeriesSpec spec;
    spec.family = series::SeriesSpec::parse_family(family);
    spec.p = Real(p);
    spec.theta = Real(theta);
    spec.beta = Real(beta);
    spec.a = Real(a);
    spec.lambda = Real(lambda);
    spec.gamma = Real(gamma);
    spec.t = Real(t);
    switch (spec.family) {
        case Family::F3:
        case Family::G3:
            rec.inputs.emplace_back("theta", report::format_number(theta));
            rec.inputs.emplace_back("beta", report::format_number(beta));
            break;
        case Family::B4:
        case Family::D4:
            rec.inputs.emplace_back("a", report::format_number(a));
            rec.inputs.emplace_back("lambda", report::format_number(lambda));
            rec.inputs.emplace_back("gamma", report::format_number(gamma));
            break;
        case Family::R:
            rec.inputs.emplace_back("t", report::format_number(t));
            break;
        default:
            break;
    }

    // even integer p with an exact route wins over the series
    if ((spec.family == Family::K || spec.family == Family::L) && is_even_integer(p) &&
        p <= 60) {
        exact::Int v = spec.family == Family::K ? exact::K_exact(static_cast<unsigned>(p))
                                                : exact::L_exact(static_cast<unsigned>(p));
        rec.values = {{"value", v.get_str()}};
        rec.provenance = "exact";
        rec.error_estimate = "0";
        std::cout << report::emit({rec}, parse_format(g.format));
        return 0;
    }
    series::EvalResult r = series::evaluate(spec, make_policy(g));
    rec.values = {{"value", r.value.str()},
                  {"terms_used", std::to_string(r.terms_used)},
                  {"peak_index", std::to_string(r.peak_index)}};
    rec.provenance = "series";
    rec.error_estimate = rel_tail(r);
    std::cout << report::emit({rec}, parse_format(g.format));
    return 0;
}

int run_table(const GlobalOpts& g, int which) {
    auto rows = report::compute_table(which, make_policy(g));
    std::cout << report::emit(rows, parse_format(g.format));
    return 0;
}

int run_constants(const GlobalOpts& g) {
    std::vector<OutputRecord> recs;
    for (const auto& rep : extremal::constants_suite()) {
        OutputRecord rec;
        rec.command = "constants";
        rec.inputs = {{"objective", rep.name}};
        rec.values = {
            {"value", report::format_number(rep.value)},
            {"argmax", report::format_number(rep.argmax)},
            {"bracket_lo", report::format_number(rep.bracket.first)},
            {"bracket_hi", report::format_number(rep.bracket.second)},
            {"interior_ceiling", report::format_number(rep.regime_split)},
            {"tail_bound_at_ceiling", report::format_number(rep.tail_bound_at_ceiling)},
        };
        rec.provenance = "series";
        rec.error_estimate = report::format_number(rep.tolerance, 3);
        recs.push_back(std::move(rec));
    }
    for (const auto& row : extremal::table3({0.45, 0.2})) {
        OutputRecord rec;
        rec.command = "constants";
        rec.inputs = {{"objective", "u(t) endpoint"}, {"t", report::format_number(row.t)}};
        rec.values = {{"T", report::format_number(row.T)},
                      {"u", report::format_number(row.u)}};
        rec.provenance = "series";
        rec.error_estimate = report::format_number(row.detail.tolerance, 3);
        recs.push_back(std::move(rec));
    }
    std::cout << report::emit(recs, parse_format(g.format));
    return 0;
}

int run_bounds(const GlobalOpts& g, double p) {
    std::vector<OutputRecord> recs;
    const Real rp(p);
    auto add = [&](const std::string& name, const std::string& value,
                   const std::string& err) {
        OutputRecord rec;
        rec.command = "bounds";
        rec.inputs = {{"p", report::format_number(p)}};
        rec.values = {{"quantity", name}, {"value", value}};
        rec.provenance = "asymptotic";
        rec.error_estimate = err;
        recs.push_back(std::move(rec));
    };

    auto sl = asym::sandwich_L(rp);   // regime-gated: throws below 700
    auto L = series::L_series(rp, make_policy(g));
    add("L_lower", sl.lower.str(), "rigorous lower bound");
    add("L_series", L.value.str(), rel_tail(L));
    add("L_upper", sl.upper.str(), "rigorous upper bound");
    add("psi3", report::format_number(sl.psi_upper), "0");
    auto xy = asym::xy_bounds(rp);
    add("exp_X1", report::format_number(exp(xy.X1)), "0");
    add("X", report::format_number(asym::X_of(rp)), "0");
    add("expansion_G", report::format_number(asym::expansion_G(rp)), "O(loglog p/log^2 p)");
    if (rp >= asym::P1()) {
        auto sk = asym::sandwich_K(rp);
        auto K = series::K_series(rp, make_policy(g));
        add("K_lower", sk.lower.str(), "rigorous lower bound");
        add("K_series", K.value.str(), rel_tail(K));
        add("K_upper", sk.upper.str(), "rigorous upper bound");
        add("psi5", report::format_number(sk.psi_upper), "0");
    }
    std::cout << report::emit(recs, parse_format(g.format));
    return 0;
}

int run_mc(const GlobalOpts& g, double p, double lambda, double mu, double samples,
           std::uint64_t seed) {
    mc::MCConfig cfg;
    cfg.p = p;
    cfg.lambda = lambda;
    cfg.mu = mu;
    cfg.samples = static_cast<long>(samples);
    cfg.seed = seed;
    auto est = mc::empirical_abs_moment(cfg);
    auto exact_route = series::eval_F3(Real(p), sqrt(Real(lambda) / Real(mu)),
                                       2 * sqrt(Real(lambda) * Real(mu)), make_policy(g));
    Real series_value = exp(exact_route.value.log_mag() - Real(lambda) - Real(mu));

    OutputRecord rec;
    rec.command = "mc";
    rec.inputs = {{"p", report::format_number(p)},
                  {"lambda", report::format_number(lambda)},
                  {"mu", report::format_number(mu)},
                  {"samples", std::to_string(cfg.samples)},
                  {"seed", std::to_string(seed)}};
    rec.values = {{"mean", report::format_number(est.mean)},
                  {"stderr", report::format_number(est.stderr_)},
                  {"series_value", report::format_number(series_value)},
                  {"sigmas_off", report::format_number(
                      (est.mean - series_value.to_double()) / est.stderr_)}};
    rec.provenance = "monte-carlo";
    rec.error_estimate = report::format_number(est.stderr_);
    std::cout << report::emit({rec}, parse_format(g.format));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schloemilch/Bell series and sharp moment-constant toolkit"};
    app.require_subcommand(1);
    app.fallthrough();   // global flags may follow the subcommand

    GlobalOpts g;
    if (const char* env = std::getenv("RC_PRECISION")) g.precision = std::atoi(env);
    std::uint64_t seed = 42;
    if (const char* env = std::getenv("RC_SEED")) seed = std::strtoull(env, nullptr, 10);

    app.add_option("--precision", g.precision, "working precision in decimal digits (>= 30)");
    app.add_option("--rel-tol", g.rel_tol, "series truncation tolerance");
    app.add_option("--max-terms", g.max_terms, "series term budget");
    app.add_option("--format", g.format, "output format: json or csv");

    double p = 4, theta = 1, beta = 1, a = 0, lambda = 1, mu = 1, gamma = 0, t = 0.5;
    double samples = 1e6;
    std::string family = "K";
    int which = 1;

    auto* eval = app.add_subcommand("eval", "evaluate one series family");
    eval->add_option("--family", family, "F3 G3 B4 D4 K L R B1")->required();
    eval->add_option("--p", p)->required();
    eval->add_option("--theta", theta);
    eval->add_option("--beta", beta);
    eval->add_option("--a", a);
    eval->add_option("--lambda", lambda);
    eval->add_option("--gamma", gamma);
    eval->add_option("--t", t);

    auto* table = app.add_subcommand("table", "recompute a published table with deltas");
    table->add_option("--which", which, "1, 2 or 3")->required();

    app.add_subcommand("constants", "extremal-constant suite");

    auto* bounds = app.add_subcommand("bounds", "sandwich bounds and expansions");
    bounds->add_option("--p", p)->required();

    auto* mcmd = app.add_subcommand("mc", "Monte-Carlo moment oracle");
    mcmd->add_option("--p", p);
    mcmd->add_option("--lambda", lambda);
    mcmd->add_option("--mu", mu);
    mcmd->add_option("--samples", samples);
    mcmd->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.precision < 30) throw domain_error("--precision must be >= 30");
        Real::set_default_digits(g.precision);
        if (eval->parsed()) return run_eval(g, family, p, theta, beta, a, lambda, gamma, t);
        if (table->parsed()) return run_table(g, which);
        if (app.get_subcommand("constants")->parsed()) return run_constants(g);
        if (bounds->parsed()) return run_bounds(g, p);
        if (mcmd->parsed()) return run_mc(g, p, lambda, mu, samples, seed);
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return domain_error::exit_code;
    } catch (const truncation_error& e) {
        std::cerr << "truncation failure: " << e.what() << '\n';
        return truncation_error::exit_code;
    } catch (const regime_error& e) {
        std::cerr << "regime error: " << e.what() << '\n';
        return regime_error::exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return internal_error::exit_code;
    }
    return 0;
}
