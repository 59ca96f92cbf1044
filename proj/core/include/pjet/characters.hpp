#pragma once

#include "pjet/fgroup.hpp"

namespace pjet {

enum class CharKind { Gm, EllipticFormal };

// A delta-character as a restricted series in a point coordinate and its
// delta-iterates.  For Gm the series lives in u = x'/x^p (Laurent monomials
// x'^n x^{-pn}); for elliptic curves in the formal parameter T with jets
// T', T''.  Coefficients are exact rationals, p-integral after construction.
struct DeltaCharacter {
    CharKind kind;
    long long p;
    int order;
    VarsPtr vars;
    DeltaPoly psi;
    // exactness guarantee: monomials of weighted degree <= weight_cap
    long long weight_cap = 0;
    int series_terms = 0; // Gm: number of u-powers included
    // (n, v_p(l_n)) for the nonzero logarithm coefficients; drives the
    // honest precision bound of point evaluations (the phi^2-part of psi
    // only keeps log terms with n <= weight_cap / p^2)
    std::vector<std::pair<int, long>> log_support;
};

// Order-1 character of G_m: sum_{n>=1} (-1)^{n-1} p^{n-1}/n u^n, u = x'/x^p.
// nterms picked so the dropped tail is 0 mod p^target_prec.
DeltaCharacter gm_delta_character(long long p, int target_prec);

// u-coefficients of the Gm character (exact formula values, for reports)
Rat gm_character_coefficient(long long p, int n);

// Order-2 character of an ordinary elliptic curve on the formal group:
// psi = (1/p) (phi^2 - a_p phi + p) applied to the formal logarithm l(T).
// Every coefficient must be p-integral after the single division by p;
// IntegralityFailure otherwise (wrong a_p or canonical-lift input).
DeltaCharacter elliptic_delta_character(const EllipticCurveData& E, long long weight_cap);

// p d(psi) = (phi*^2 - a_p phi* + p) omega, compared coefficient-exactly on
// the three components dT, dT', dT'' through the stated T-degree.
struct DPsiReport {
    bool exact = false;
    int t_degree_checked = 0;
    long long weight_cap_checked = 0;
};
DPsiReport check_dpsi_identity(const EllipticCurveData& E, const DeltaCharacter& psi,
                               int t_degree);

// psi(F(T1,T2), delta F, ...) - psi(T1 jets) - psi(T2 jets) == 0 to the
// given weighted cap (symbolic homomorphism property on the formal group)
bool check_character_additivity(const DeltaCharacter& psi, const FormalGroupData& G,
                                long long weight_cap);

// evaluation (psi_*)
PadicElem psi_star_gm(const DeltaCharacter& psi, const PadicElem& alpha);
// tau: formal parameter of a kernel-of-reduction point
PadicElem psi_star_elliptic_tau(const DeltaCharacter& psi, const PadicElem& tau);
// general point: P itself in the formal domain, or translation by a supplied
// (or computed) prime-to-p multiple m; returns psi(mP)/m
PadicElem psi_star_point(const DeltaCharacter& psi, const EllipticCurveData& E,
                         const EllipticPoint& P, std::optional<long long> m = {});

} // namespace pjet
