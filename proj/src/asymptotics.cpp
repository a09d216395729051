#include "sbell/asymptotics.hpp"

#include "sbell/errors.hpp"

namespace sbell::asym {

namespace {

const Real kHalf(0.5);

Real sqrt_2pi() { return sqrt(2 * Real::pi()); }

void require_floor(const Real& p, const Real& floor, const char* who) {
    if (p < floor)
        throw regime_error(std::string(who) + ": p below regime floor " + floor.str(6));
}

/// Gaussian window integral of the lower-bound construction: the sum over
/// integer sites in [x0+2, x0+sqrt(q)] of a unimodal minorant, bounded below
/// by the integral over [x0+3, x0+sqrt(q)] of exp(-(x-x0)^2/(2 sigma^2)).
Real gaussian_window(const Real& q, const Real& x_minus) {
    Real c = q / (x_minus * x_minus) + 1 / x_minus;   // >= sup |curvature| when x_minus <= saddle
    Real sigma = 1 / sqrt(c);
    auto Phi0 = [](const Real& T) { return sqrt(Real::pi() / 2) * erf(T / sqrt(Real(2))); };
    return sigma * (Phi0(sqrt(q) / sigma) - Phi0(Real(3) / sigma));
}

} // namespace

Real g(const Real& p) { return p / (Real::euler_e() * log(p)); }
Real Delta(const Real& p) { return log(log(p)) / log(p); }
Real delta(const Real& p) { return 1 / log(p); }
Real h(const Real& p) {
    Real D = Delta(p);
    return g(p) * (1 + D + D * D);
}
Real zeta(const Real& p) { return Real::ln2() / log(2 * p); }

SolveResult solve_saddle(const Real& p, const Real& c) {
    if (p.sign() <= 0) throw domain_error("solve_saddle: p must be positive");
    auto f = [&](const Real& x) { return x * (log(x) + c) - p; };
    Real lo = exp(-c);              // f(lo) = -p < 0
    Real hi = max(Real(4), max(p, 2 * lo));
    for (int i = 0; i < 200 && f(hi).sign() <= 0; ++i) hi *= 2;

    Real x = max(p / (log(max(p, Real(2))) + c + 1), lo * Real("1.5"));
    if (x >= hi || x <= lo) x = (lo + hi) / 2;
    const Real tol = p * pow(Real(10), -static_cast<long>(Real::default_digits() - 8));
    SolveResult out;
    for (int it = 1; it <= 200; ++it) {
        Real fx = f(x);
        if (fx.sign() > 0) hi = x; else lo = x;
        if (abs(fx) <= tol) {
            out.root = x;
            out.residual = fx;
            out.iterations = it;
            return out;
        }
        Real step = fx / (log(x) + c + 1);
        Real nx = x - step;
        if (!(nx > lo && nx < hi)) nx = (lo + hi) / 2;   // bisection fallback
        x = nx;
    }
    throw internal_error("solve_saddle: no convergence in 200 iterations");
}

SolveResult solve_M(const Real& p) {
    if (p < Real(4)) throw domain_error("solve_M: p must be >= 4");
    return solve_saddle(p, Real(0));
}

SolveResult solve_N(const Real& p) {
    if (p < Real(4)) throw domain_error("solve_N: p must be >= 4");
    return solve_saddle(p, Real::ln2());
}

Real C14() { return 1 / (1 - Delta(P0())); }
Real C15() {
    Real d = Delta(P0());
    return 2 / (sqrt(1 + 4 * d * d) + 1);
}

Real eps_plus(const Real& p) {
    Real D = Delta(p);
    return D + C14() * D * D;
}

Real eps_minus(const Real& p) {
    Real D = Delta(p);
    return D - C15() * D * D;
}

Envelopes envelopes(const Real& p) {
    require_floor(p, P0(), "envelopes");
    Envelopes e;
    e.eps_plus = eps_plus(p);
    e.eps_minus = eps_minus(p);
    Real baseM = p / log(p);
    e.M_plus = baseM * (1 + e.eps_plus);
    e.M_minus = baseM * (1 + e.eps_minus);
    Real baseN = p / log(2 * p);
    e.N_plus = baseN * (1 + eps_plus(2 * p));
    e.N_minus = baseN * (1 + eps_minus(2 * p));
    return e;
}

Real V_of(const Real& x, const Real& p) { return p * log(x) - x * log(x) + x; }
Real W_of(const Real& x, const Real& p) { return V_of(x, p) - x * Real::ln2(); }

Real X_of(const Real& p) {
    Real M = solve_saddle(p, Real(0)).root;
    return V_of(M, p) / p;
}

Real Y_of(const Real& p) {
    Real N = solve_saddle(p, Real::ln2()).root;
    return W_of(N, p) / p;
}

XYBounds xy_bounds(const Real& p) {
    require_floor(p, P0(), "xy_bounds");
    XYBounds b;
    Real D = Delta(p), d = delta(p);
    Real ep = eps_plus(p), em = eps_minus(p);
    b.X1 = D + d + D * ep + d * (ep - log1p(ep));
    b.X2 = D + d + (log1p(em) - em) - d * em * log1p(em);
    Real D2 = Delta(2 * p), d2 = delta(2 * p);
    Real ep2 = eps_plus(2 * p), em2 = eps_minus(2 * p);
    Real dl2 = d * Real::ln2();
    b.Y1 = D2 + d2 + (1 + ep2) * dl2 / (1 + dl2) + ep2 * (D2 + d2);
    b.Y2 = D2 + d2 + em2 * (D2 + d2);
    return b;
}

Real psi1(const Real& p) {
    Real D = Delta(p);
    return sqrt(2 * Real::pi() * p) * (1 + D + C14() * D * D) / log(p);
}

Real psi2(const Real& p) {
    Real D = Delta(p);
    Real A = 1 + D + C14() * D * D;
    Real lp = log(p);
    return exp(-(lp * lp) / (A * A)) * p * A * A / (lp * lp);
}

namespace {

// upper-bound bracket: e L(p) <= exp(pX) [1.5 e^{-pX} + (2pi)^{-1/2} + psi1 + 2 (2pi)^{-1/2} psi2]
Real upper_bracket_L(const Real& p) {
    Real inv_s2pi = 1 / sqrt_2pi();
    return Real(1.5) * exp(-p * X_of(p)) + inv_s2pi + psi1(p) + 2 * inv_s2pi * psi2(p);
}

Real upper_bracket_K(const Real& p) {
    Real inv_s2pi = 1 / sqrt_2pi();
    Real ep2 = eps_plus(2 * p);
    Real lp = log(p);
    Real third = 2 * inv_s2pi * p / (lp * lp) * (1 + ep2) * (1 + ep2) *
                 exp(-kHalf * lp * lp / ((1 + ep2) * (1 + ep2)));
    return inv_s2pi + sqrt(p) * (1 + ep2) / log(2 * p) + third;
}

} // namespace

Real psi3(const Real& p) {
    return exp(log(upper_bracket_L(p) / Real::euler_e()) / p);
}

Real psi5(const Real& p) {
    return exp(log(2 * exp(Real(-0.75)) * upper_bracket_K(p)) / p);
}

SandwichBound sandwich_L(const Real& p) {
    require_floor(p, P0(), "sandwich_L");
    SandwichBound s;
    s.regime_floor = P0();
    const Real pX = p * X_of(p);
    s.upper = LogReal::from_log(1, pX + log(upper_bracket_L(p) / Real::euler_e()));

    const Real q = p - kHalf;
    const Real Mq = solve_saddle(q, Real(0)).root;
    const Real Mm = (q / log(q)) * (1 + eps_minus(q));
    const Real G = gaussian_window(q, Mm);
    Real lower_log = q * X_of(q) + log(G / (Mq + sqrt(q) + 1)) - log(sqrt_2pi()) -
                     Real(1) / 12 - 1;
    s.lower = LogReal::from_log(1, lower_log);
    s.psi_upper = psi3(p);
    s.psi_lower = exp((lower_log - pX) / p);
    if (!(s.lower <= s.upper)) throw internal_error("sandwich_L: bound inversion");
    return s;
}

SandwichBound sandwich_K(const Real& p) {
    require_floor(p, P1(), "sandwich_K");
    SandwichBound s;
    s.regime_floor = P1();
    const Real pY = p * Y_of(p);
    s.upper = LogReal::from_log(1, pY + log(2 * exp(Real(-0.75)) * upper_bracket_K(p)));

    const Real q = p - kHalf;
    const Real Nq = solve_saddle(q, Real::ln2()).root;
    const Real Nm = (q / log(2 * q)) * (1 + eps_minus(2 * q));
    const Real G = gaussian_window(q, Nm);
    Real lower_log = q * Y_of(q) + log(2 * G) - log(sqrt_2pi()) - Real(1) / 12 - 1;
    s.lower = LogReal::from_log(1, lower_log);
    s.psi_upper = psi5(p);
    s.psi_lower = exp((lower_log - pY) / p);
    if (!(s.lower <= s.upper)) throw internal_error("sandwich_K: bound inversion");
    return s;
}

Real ratio_tail_bound(const Real& p, const Real& t) {
    if (t.sign() <= 0 || t > kHalf) throw domain_error("ratio_tail_bound: t in (0,1/2]");
    require_floor(p, Real(16), "ratio_tail_bound");
    // R(p,t) <= 2 e^{t^2 - 2t} sum_n n^p t^n / n!, and the saddle sum is at
    // most (2 N_t + 1) sup_x (2pi)^{-1/2} exp(W_t(x,p)): 2N_t sites up to the
    // cutoff and a geometric tail below one extra site.
    Real Nt = solve_saddle(p, -log(t)).root;
    Real Yt = (p * log(Nt) - Nt * log(Nt) + Nt * (1 + log(t))) / p;
    Real count = log(2 * exp(t * t - 2 * t) * (2 * Nt + 1) / sqrt_2pi());
    return exp(Yt - log(g(p)) + count / p);
}

Real expansion_G(const Real& p) {
    Real D = Delta(p);
    return g(p) * (1 + D + delta(p) + D * D);
}

Real expansion_S(const Real& p) {
    Real D = Delta(p);
    return g(p) * (1 + D + (1 - Real::ln2()) * delta(p) + D * D);
}

Real expansion_R(const Real& p, const Real& t) {
    Real D = Delta(p);
    return g(p) * (1 + D + (1 + log(t)) * delta(p) + D * D);
}

SaddleClosedForms saddle_closed_forms(const Real& p) {
    SaddleClosedForms f;
    Real M = solve_saddle(p, Real(0)).root;
    f.G_form = exp((1 - M / p) * log(M) + M / p);
    Real N = solve_saddle(p, Real::ln2()).root;
    f.S_form = exp((1 - N / p) * log(N) + (N / p) * (1 - Real::ln2()));
    return f;
}

AsymptoticEnv make_env(const Real& p) {
    if (p < Real(4)) throw domain_error("make_env: p must be >= 4");
    AsymptoticEnv e;
    e.p = p;
    e.g = g(p);
    e.h = h(p);
    e.Delta = Delta(p);
    e.delta = delta(p);
    e.zeta = zeta(p);
    e.M = solve_M(p).root;
    e.N = solve_N(p).root;
    e.X = (p * log(e.M) - e.M * log(e.M) + e.M) / p;
    e.Y = (p * log(e.N) - e.N * log(e.N) + e.N * (1 - Real::ln2())) / p;
    if (p >= P0()) {
        e.env = envelopes(p);
        e.has_envelopes = true;
    }
    return e;
}

} // namespace sbell::asym
