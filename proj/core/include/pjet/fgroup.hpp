#pragma once

#include <optional>

#include "pjet/poly.hpp"

namespace pjet {

// Truncated univariate power series over the rationals; c[k] is the T^k
// coefficient, exact through degree cap.
struct UniSeries {
    int cap = 0;
    std::vector<Rat> c; // size cap+1

    explicit UniSeries(int cap_) : cap(cap_), c(cap_ + 1, Rat(0)) {}
    static UniSeries identity(int cap); // T
    Rat at(int k) const { return k <= cap ? c[k] : Rat(0); }

    UniSeries operator+(const UniSeries& o) const;
    UniSeries operator-(const UniSeries& o) const;
    UniSeries operator*(const UniSeries& o) const;
    UniSeries scaled(const Rat& r) const;
    UniSeries derivative() const;
    UniSeries integral() const;          // constant term 0
    UniSeries mult_inverse() const;      // needs c[0] != 0
    UniSeries compose(const UniSeries& g) const;   // needs g(0) = 0
    UniSeries comp_inverse() const;      // needs c[0]=0, c[1] != 0
};

enum class GroupKind { Ga, Gm, Elliptic };

// One-dimensional formal group law with its logarithm, both truncated to
// total degree M.  The law lives over {"T1","T2"} at jet order 0.
struct FormalGroupData {
    GroupKind kind;
    long long p;
    int trunc; // M
    VarsPtr law_vars;
    DeltaPoly law;     // F(T1,T2)
    UniSeries log;     // l(T), l'(0) = 1

    // l(F(T1,T2)) - l(T1) - l(T2) vanishes to degree M (constructor-checked
    // for elliptic; exact for Ga/Gm)
};

FormalGroupData make_ga_group(long long p, int trunc);
FormalGroupData make_gm_group(long long p, int trunc);
// short Weierstrass y^2 = x^3 + a4 x + a6, parameter T = -x/y
FormalGroupData make_elliptic_group(long long p, int trunc, const Int& a4, const Int& a6);

// formal logarithm of the curve (integral of the invariant differential in
// the parameter T = -x/y), exact through degree cap
UniSeries elliptic_log(const Int& a4, const Int& a6, int cap);

// p-adic sum of two kernel-of-reduction points given by formal parameters:
// F(t1, t2) evaluated numerically.  Exact mod p^min(prec, trunc+1).
PadicElem formal_sum_tau(const FormalGroupData& G, const PadicElem& t1, const PadicElem& t2);

// Kernel composition law of J^n(G) -> G^: the tuple delta F, ..., delta^n F
// restricted to T1 = T2 = 0, over {"T1","T2"} at jet order n.  Component k
// is exact for monomials of weighted degree <= p^k * M.
struct KernelLaw {
    VarsPtr vars;
    int order;
    std::vector<DeltaPoly> components; // size order
};
KernelLaw kernel_law(const FormalGroupData& G, int n);

// --- elliptic curves over the working context ------------------------------

struct EllipticCurveData {
    CtxPtr ctx;
    Int a4, a6;     // exact integer model coefficients
    long long ap = 0;
    bool supersingular = false;

    long long p() const { return ctx->p(); }
    bool ordinary() const { return !supersingular; }
};

// a_p = p + 1 - #E(F_p) by exhaustive count; BadReduction if disc = 0 mod p.
long long count_points_ap(long long p, const Int& a4, const Int& a6);

// reduction type bookkeeping for general Weierstrass models over small fields
enum class ReductionKind { Good, SplitMult, NonsplitMult, Additive };
struct TraceResult {
    long long a = 0;
    ReductionKind kind = ReductionKind::Good;
};
// [a1,a2,a3,a4,a6] long Weierstrass; counts smooth points when singular
TraceResult trace_of_frobenius(long long ell, const std::vector<Int>& a15);

EllipticCurveData make_elliptic_curve(const CtxPtr& ctx, const Int& a4, const Int& a6,
                                      std::optional<long long> ap_override = {});

// Jacobian-coordinate point arithmetic over Z/p^N (p >= 5).  Additions of
// points that collide mod p^k lose k digits; the coordinates say so.
struct EllipticPoint {
    PadicElem X, Y, Z;
    bool is_infinity() const { return Z.is_zero(); }
};
EllipticPoint ec_affine(const EllipticCurveData& E, const PadicElem& x, const PadicElem& y);
EllipticPoint ec_infinity(const EllipticCurveData& E);
EllipticPoint ec_add(const EllipticCurveData& E, const EllipticPoint& P, const EllipticPoint& Q);
EllipticPoint ec_double(const EllipticCurveData& E, const EllipticPoint& P);
EllipticPoint ec_scalar_mul(const EllipticCurveData& E, Int k, const EllipticPoint& P);
// formal parameter -x/y of a point in the kernel of reduction
PadicElem ec_formal_parameter(const EllipticPoint& P);
bool ec_on_curve(const EllipticCurveData& E, const EllipticPoint& P);
// order of the reduction mod p in E(F_p), by brute force
long long ec_reduction_order(const EllipticCurveData& E, const EllipticPoint& P);

// weight-2 newform coefficients a_1..a_K recovered from a minimal Weierstrass
// model by point counting (Euler recursion at prime powers, multiplicativity)
struct NewformData {
    long long level = 0;
    std::vector<long long> a; // a[n] for 1 <= n <= K, a[0] unused
    int K() const { return (int)a.size() - 1; }
};
NewformData newform_from_curve(const std::vector<Int>& a15_minimal, long long level, int K);

} // namespace pjet
