#pragma once

#include "pjet/characters.hpp"
#include "pjet/gfp.hpp"

namespace pjet {

// Truncated Laurent series in q with polynomial jet dependence q', ..., q^(r).
// Exact within the stated window: q-exponents in [q_low, q_high], jet degree
// <= jet_cap (terms beyond the jet cap are divisible by p^{jet degree}).
struct DSeriesMeta {
    long long p = 2;
    int r = 1;
    int q_low = 0;
    int q_high = 0;
    int jet_cap = 8;
    bool mod_p = false;
};

struct DSeries {
    VarsPtr vars; // {"q"} at order r
    DeltaPoly s;
    DSeriesMeta meta;
};

DSeries make_dseries(long long p, int r, int q_low, int q_high, int jet_cap);
int q_var_index(const DSeries& s); // index of the order-0 variable q

// the unique p-derivation with delta q = q', delta q^(j) = q^(j+1), base
// Frobenius fixing coefficients; negative q-powers expand via the geometric
// series in p q'/q^p up to the jet cap
DSeries delta_on_series(const DSeries& s);

// sum_{n>=1} (-1)^{n-1} p^{n-1}/n (q'/q^p)^n through n = nmax
DSeries f1_series(long long p, int nmax);

// q-part only: sum c_n q^n -> sum c_{np} q^n
DSeries u_operator(const DSeries& s);

struct FsharpReport {
    DSeries formula;     // closed formula mod p
    DSeries constructed; // character evaluated on the parametrization jets, mod p
    DSeries difference;
    bool congruent = false;
    int q_degree = 0;
};
// Both routes to the weight-0 order-2 form attached to the newform of E:
// (a) the displayed formula mod p; (b) z(q) = sum a_n/n q^n, t(q) the formal
// parameter of the parametrization, psi evaluated at (t, delta t, delta^2 t).
FsharpReport fsharp_expansion(const EllipticCurveData& E, const NewformData& f, int q_degree);

// --- "pT_m(p)" mod p --------------------------------------------------------

struct HeckeOptions {
    int s_degree_cap = 8; // total degree bound for f_(p) in the s-variables
};

struct SymmetricSolve {
    bool symmetric = false;
    VarsPtr s_vars;  // s1..sp at order r
    GFpPoly f_p;     // F = f_p(images of s_j^{(k)})
};

// decides delta-p-symmetry mod p and recovers f_(p) by the weighted
// linear solve against the images s_j^{(k)} -> delta^k(e_j(x)) mod p
SymmetricSolve delta_p_symmetric_solve(const DSeries& f, const HeckeOptions& opt = {});

// "pT_m(p)" f = f_(p)(0,..,0,q, ..., 0,..,0,q^(r)) + p^m f(q^p, ..., delta^r(q^p))
DSeries hecke_pTm(const DSeries& f, int m, const HeckeOptions& opt = {});

// classical weight-m Hecke operator T_ell (ell prime, ell != p) on the
// q-part only: sum c_n q^n -> sum (c_{ell n} + ell^{m-1} c_{n/ell}) q^n.
// The delta-extension carries no pinned normalization and stays out of scope.
DSeries hecke_classical_Tl(const DSeries& f, long long ell, int weight);

} // namespace pjet
