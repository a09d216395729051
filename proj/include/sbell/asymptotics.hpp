#ifndef SBELL_ASYMPTOTICS_HPP
#define SBELL_ASYMPTOTICS_HPP

#include "sbell/real.hpp"

namespace sbell::asym {

// Regime floors for the explicit envelope/sandwich machinery.
inline Real P0() { return Real(700); }
inline Real P1() { return Real(1000000); }

Real g(const Real& p);          // p / (e ln p)
Real Delta(const Real& p);      // ln ln p / ln p
Real delta(const Real& p);      // 1 / ln p
Real h(const Real& p);          // g (1 + Delta + Delta^2)
Real zeta(const Real& p);       // ln 2 / ln 2p

struct SolveResult {
    Real root;
    Real residual;
    int iterations = 0;
};

/// Root of x (ln x + c) = p, the saddle of term profiles x^p e^{-c x}-ish;
/// c = 0 gives M(p), c = ln 2 gives N(p), c = -ln t the Poisson(t) analogue.
SolveResult solve_saddle(const Real& p, const Real& c);

SolveResult solve_M(const Real& p);   // M ln M = p, p >= 4
SolveResult solve_N(const Real& p);   // N ln(2N) = p, p >= 4; N(p) = M(2p)/2

Real C14();   // (1 - ln ln P0 / ln P0)^{-1}
Real C15();   // 2 / (sqrt(1 + 4 Delta(P0)^2) + 1)

Real eps_plus(const Real& p);    // Delta + C14 Delta^2   (upper envelope)
Real eps_minus(const Real& p);   // Delta - C15 Delta^2   (lower envelope)

struct Envelopes {
    Real eps_plus, eps_minus;
    Real M_plus, M_minus;
    Real N_plus, N_minus;
};
/// Explicit envelopes M- <= M <= M+ and N- <= N <= N+, valid for p >= 700.
Envelopes envelopes(const Real& p);

Real X_of(const Real& p);   // V(M(p),p)/p,  V = p ln x - x ln x + x
Real Y_of(const Real& p);   // W(N(p),p)/p,  W = V - x ln 2
Real V_of(const Real& x, const Real& p);
Real W_of(const Real& x, const Real& p);

struct XYBounds {
    Real X1, X2;   // X(p) - ln g(p) lies in (X2, X1)
    Real Y1, Y2;   // Y(p) - ln g(p) lies in (Y2, Y1)
};
XYBounds xy_bounds(const Real& p);   // p >= 700

// Pieces of the upper-bound assemblies (exposed for verification).
Real psi1(const Real& p);
Real psi2(const Real& p);
Real psi3(const Real& p);   // upper L factor:  L <= exp(pX) psi3^p
Real psi5(const Real& p);   // upper K factor:  K <= exp(pY) psi5^p

struct SandwichBound {
    LogReal lower, upper;
    Real regime_floor;
    Real psi_upper;   // (upper / exp(p X or Y))^{1/p}
    Real psi_lower;   // (lower / exp(p X or Y))^{1/p}
};
SandwichBound sandwich_L(const Real& p);   // p >= 700
SandwichBound sandwich_K(const Real& p);   // p >= 10^6

/// Rigorous upper bound for R_norm(p,t)/g(p) = (2 e^{-2t} sum n^p I_n(2t))^{1/p}/g(p),
/// from the factorial comparison I_n(2t) <= (t^n/n!) e^{t^2} and a counting
/// bound on the saddle sum; valid for p >= 16, decreasing toward 1.  t = 1/2
/// covers the symmetric-constant ratio S(p)/g(p).
Real ratio_tail_bound(const Real& p, const Real& t);

/// Truncated expansions g(p)(1 + Delta + c delta + Delta^2) with
/// c = 1 (G), 1 - ln 2 (S), 1 + ln t (R).
Real expansion_G(const Real& p);
Real expansion_S(const Real& p);
Real expansion_R(const Real& p, const Real& t);

struct SaddleClosedForms {
    Real G_form;   // M^{1-M/p} exp(M/p)        == exp(X(p))
    Real S_form;   // N^{1-N/p} (e/2)^{N/p}     == exp(Y(p))
};
SaddleClosedForms saddle_closed_forms(const Real& p);

/// One-stop bundle of the asymptotic scaffolding at a given p (>= 4).
/// Envelope fields are populated for p >= 700 only.
struct AsymptoticEnv {
    Real p;
    Real g, h, Delta, delta, zeta;
    Real M, N;
    Real X, Y;
    bool has_envelopes = false;
    Envelopes env;
};
AsymptoticEnv make_env(const Real& p);

} // namespace sbell::asym

#endif
