#ifndef SBELL_EXTREMAL_HPP
#define SBELL_EXTREMAL_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sbell/real.hpp"
#include "sbell/series.hpp"

namespace sbell::extremal {

struct ConstantReport {
    std::string name;
    Real value;                 // supremum of the ratio
    Real argmax;
    std::pair<Real, Real> bracket;
    Real tolerance;             // |delta p| of the refinement
    Real regime_split;          // interior search ceiling actually used
    Real tail_bound_at_ceiling; // rigorous bound on the objective past the ceiling
    std::vector<std::pair<double, double>> trace;   // (p, ratio) grid evaluations
};

struct SearchOptions {
    double grid_ratio = 1.05;
    double refine_tol = 1e-3;
    bool adaptive_ceiling = false;   // double the ceiling until the tail bound confines
};

using RatioFn = std::function<Real(const Real&)>;

/// Coarse geometric scan, golden-section refinement, and tail confinement:
/// the supplied tail_bound must dominate f beyond the ceiling, and its value
/// there (and further out) must stay below the interior maximum, otherwise
/// the confinement argument failed and a regime_error is thrown.
ConstantReport maximize_ratio(const RatioFn& f, const Real& domain_floor,
                              const Real& interior_ceiling, const RatioFn& tail_bound,
                              const std::string& name, const SearchOptions& opts = {});

/// Maximum over even integers in [p_min, p_max].
ConstantReport maximize_even(const RatioFn& f, long p_min, long p_max,
                             const std::string& name);

/// The extremal-constant suite: suprema of G/g, G/h, S/g, S/h, their even-p
/// variants, plus infimum trend certificates.  Uses a shared evaluation cache.
std::vector<ConstantReport> constants_suite();

struct Table3Row {
    double t;
    Real T;      // argmax_p of R_norm(p,t)/g(p)
    Real u;      // the supremum
    ConstantReport detail;
};
std::vector<Table3Row> table3(const std::vector<double>& t_grid);

/// Shared-cache evaluators used by the suite (exposed for tests/CLI).
Real G_over_g(const Real& p);
Real G_over_h(const Real& p);
Real S_over_g(const Real& p);
Real S_over_h(const Real& p);

/// Rigorous tail majorants for the four objectives: the centered pair uses
/// the explicit sandwich factors (valid from p = 700), the symmetric pair the
/// factorial-comparison bound at t = 1/2; the /h variants divide by
/// 1 + Delta + Delta^2 exactly as the objective does.
Real tail_bound_G_over_g(const Real& p);
Real tail_bound_G_over_h(const Real& p);
Real tail_bound_S_over_g(const Real& p);
Real tail_bound_S_over_h(const Real& p);

} // namespace sbell::extremal

#endif
