#include "pjet/fgroup.hpp"

namespace pjet {

// ---------------------------------------------------------------------------
// point counting / curves
// ---------------------------------------------------------------------------

namespace {

long long mod_ll(const Int& v, long long m) {
    Int r = v % m;
    if (r < 0) r += m;
    return (long long)r;
}

} // namespace

long long count_points_ap(long long p, const Int& a4, const Int& a6) {
    Int disc = -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6);
    if (disc % p == 0) throw BadReduction("discriminant vanishes mod " + std::to_string(p));
    // quadratic residue table
    std::vector<int> qr(p, 0);
    for (long long y = 0; y < p; ++y) qr[y * y % p] += 1;
    long long A = mod_ll(a4, p), B = mod_ll(a6, p);
    long long count = 1; // infinity
    for (long long x = 0; x < p; ++x) {
        long long rhs = ((x * x % p) * x + A * x + B) % p;
        count += qr[rhs];
    }
    return p + 1 - count;
}

TraceResult trace_of_frobenius(long long ell, const std::vector<Int>& a15) {
    if (a15.size() != 5) throw DomainError("expected [a1,a2,a3,a4,a6]");
    long long a1 = mod_ll(a15[0], ell), a2 = mod_ll(a15[1], ell), a3 = mod_ll(a15[2], ell),
              a4 = mod_ll(a15[3], ell), a6 = mod_ll(a15[4], ell);
    auto md = [&](long long v) { return ((v % ell) + ell) % ell; };
    // F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
    auto F = [&](long long x, long long y) {
        long long x2 = md(x * x), x3 = md(x2 * x);
        return md(md(y * y) + md(a1 * x) * y + a3 * y - x3 - md(a2 * x2) - a4 * x - a6);
    };
    auto Fx = [&](long long x, long long y) {
        long long x2 = md(x * x);
        return md(a1 * y - 3 * x2 - md(2 * a2 * x) - a4);
    };
    auto Fy = [&](long long x, long long y) { return md(2 * y + a1 * x + a3); };

    long long smooth = 0;
    long long sing_x = -1, sing_y = -1;
    for (long long x = 0; x < ell; ++x)
        for (long long y = 0; y < ell; ++y) {
            if (F(x, y) != 0) continue;
            if (Fx(x, y) == 0 && Fy(x, y) == 0) {
                sing_x = x;
                sing_y = y;
            } else {
                ++smooth;
            }
        }
    TraceResult r;
    if (sing_x < 0) {
        r.kind = ReductionKind::Good;
        r.a = ell - smooth; // ell + 1 - (smooth + infinity)
        return r;
    }
    // singular: #E^ns = smooth + 1 (infinity); a = ell - #E^ns
    long long ns = smooth + 1;
    r.a = ell - ns;
    if (r.a == 1) r.kind = ReductionKind::SplitMult;
    else if (r.a == -1) r.kind = ReductionKind::NonsplitMult;
    else r.kind = ReductionKind::Additive;
    return r;
}

EllipticCurveData make_elliptic_curve(const CtxPtr& ctx, const Int& a4, const Int& a6,
                                      std::optional<long long> ap_override) {
    if (ctx->p() < 5) throw DomainError("curve arithmetic needs p >= 5");
    EllipticCurveData E{ctx, a4, a6, 0, false};
    long long counted = count_points_ap(ctx->p(), a4, a6); // throws BadReduction
    E.ap = ap_override.value_or(counted);
    if (ap_override && *ap_override != counted)
        throw DomainError("a_p override disagrees with point count");
    // Hasse bound
    if ((Int(E.ap) * E.ap) > 4 * Int(ctx->p()))
        throw DomainError("a_p violates the Hasse bound");
    E.supersingular = (E.ap % ctx->p() == 0);
    return E;
}

// ---------------------------------------------------------------------------
// point arithmetic (Jacobian coordinates)
// ---------------------------------------------------------------------------

namespace {

// Strip the largest common Jacobian rescaling p^j (X/p^{2j}, Y/p^{3j}, Z/p^j).
// Sums of points that are congruent mod p produce such common factors; the
// strip costs digits of precision, which the coordinates then report.
EllipticPoint ec_normalize(EllipticPoint P) {
    if (P.Z.is_zero()) return P;
    int j = std::min({P.X.valuation() / 2, P.Y.valuation() / 3, P.Z.valuation()});
    // never reduce any coordinate below one known digit
    j = std::min({j, (P.X.prec() - 1) / 2, (P.Y.prec() - 1) / 3, P.Z.prec() - 1});
    if (j < 0) j = 0;
    for (int i = 0; i < j; ++i) {
        P.X = P.X.div_exact_p().div_exact_p();
        P.Y = P.Y.div_exact_p().div_exact_p().div_exact_p();
        P.Z = P.Z.div_exact_p();
    }
    if (j > 0) {
        int pr = std::min({P.X.prec(), P.Y.prec(), P.Z.prec()});
        P.X = P.X.with_prec(pr);
        P.Y = P.Y.with_prec(pr);
        P.Z = P.Z.with_prec(pr);
    }
    return P;
}

} // namespace

EllipticPoint ec_affine(const EllipticCurveData& E, const PadicElem& x, const PadicElem& y) {
    EllipticPoint P{x, y, PadicElem::one(E.ctx)};
    if (!ec_on_curve(E, P)) throw NotOnScheme("point not on the curve at working precision");
    return P;
}

EllipticPoint ec_infinity(const EllipticCurveData& E) {
    return EllipticPoint{PadicElem::one(E.ctx), PadicElem::one(E.ctx), PadicElem::zero(E.ctx)};
}

bool ec_on_curve(const EllipticCurveData& E, const EllipticPoint& P) {
    // Y^2 = X^3 + a4 X Z^4 + a6 Z^6
    PadicElem A4(E.ctx, E.a4), A6(E.ctx, E.a6);
    PadicElem Z2 = P.Z * P.Z;
    PadicElem Z4 = Z2 * Z2;
    PadicElem lhs = P.Y * P.Y;
    PadicElem rhs = P.X * P.X * P.X + A4 * P.X * Z4 + A6 * Z4 * Z2;
    return (lhs - rhs).is_zero();
}

EllipticPoint ec_double(const EllipticCurveData& E, const EllipticPoint& P) {
    if (P.is_infinity()) return P;
    PadicElem A4(E.ctx, E.a4);
    PadicElem Y2 = P.Y * P.Y;
    PadicElem S = P.X * Y2;
    S = S + S + S + S; // 4 X Y^2
    PadicElem Z2 = P.Z * P.Z;
    PadicElem M = P.X * P.X;
    M = M + M + M; // 3X^2
    M = M + A4 * Z2 * Z2;
    PadicElem X3 = M * M - (S + S);
    PadicElem Y4 = Y2 * Y2;
    PadicElem eight_y4 = Y4;
    for (int i = 0; i < 3; ++i) eight_y4 = eight_y4 + eight_y4;
    PadicElem Y3 = M * (S - X3) - eight_y4;
    PadicElem Z3 = (P.Y + P.Y) * P.Z;
    return ec_normalize(EllipticPoint{X3, Y3, Z3});
}

EllipticPoint ec_add(const EllipticCurveData& E, const EllipticPoint& P, const EllipticPoint& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    PadicElem Z1_2 = P.Z * P.Z, Z2_2 = Q.Z * Q.Z;
    PadicElem U1 = P.X * Z2_2, U2 = Q.X * Z1_2;
    PadicElem S1 = P.Y * Z2_2 * Q.Z, S2 = Q.Y * Z1_2 * P.Z;
    PadicElem H = U2 - U1, R = S2 - S1;
    if (H.is_zero()) {
        if (R.is_zero()) return ec_double(E, P);
        return ec_infinity(E);
    }
    PadicElem H2 = H * H, H3 = H2 * H;
    PadicElem X3 = R * R - H3 - (U1 * H2 + U1 * H2);
    PadicElem Y3 = R * (U1 * H2 - X3) - S1 * H3;
    PadicElem Z3 = P.Z * Q.Z * H;
    return ec_normalize(EllipticPoint{X3, Y3, Z3});
}

EllipticPoint ec_scalar_mul(const EllipticCurveData& E, Int k, const EllipticPoint& P) {
    if (k < 0) {
        EllipticPoint mP{P.X, -P.Y, P.Z};
        return ec_scalar_mul(E, -k, mP);
    }
    EllipticPoint R = ec_infinity(E);
    EllipticPoint B = P;
    while (k > 0) {
        if ((k & 1) != 0) R = ec_add(E, R, B);
        k >>= 1;
        if (k > 0) B = ec_double(E, B);
    }
    return R;
}

PadicElem ec_formal_parameter(const EllipticPoint& P) {
    if (P.is_infinity()) throw PNotInDomain("identity has formal parameter 0");
    // t = -x/y = -X Z / Y
    return -(P.X * P.Z).divide_exact(P.Y);
}

long long ec_reduction_order(const EllipticCurveData& E, const EllipticPoint& P) {
    long long p = E.p();
    long long n = p + 1 - E.ap; // group order of E(F_p)
    // order of the reduction divides n; find the exact order
    auto reduces_to_identity = [&](const EllipticPoint& Q) { return Q.Z.valuation() >= 1; };
    long long ord = n;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        for (long long cand : {d, n / d}) {
            if (cand < ord && reduces_to_identity(ec_scalar_mul(E, Int(cand), P)))
                ord = cand;
        }
    }
    return ord;
}

// ---------------------------------------------------------------------------
// newform coefficients from a minimal model
// ---------------------------------------------------------------------------

NewformData newform_from_curve(const std::vector<Int>& a15_minimal, long long level, int K) {
    NewformData f;
    f.level = level;
    f.a.assign(K + 1, 0);
    if (K >= 1) f.a[1] = 1;
    // prime powers by Euler recursion, then multiplicativity
    for (long long ell = 2; ell <= K; ++ell) {
        if (!is_prime_u64((unsigned long long)ell)) continue;
        TraceResult t = trace_of_frobenius(ell, a15_minimal);
        bool good = (t.kind == ReductionKind::Good);
        if (good && Int(t.a) * t.a > 4 * Int(ell))
            throw DomainError("counted trace violates Hasse at " + std::to_string(ell));
        long long prev2 = 1, prev1 = t.a; // a_{ell^0}, a_{ell^1}
        if (ell <= K) f.a[ell] = t.a;
        for (Int q = Int(ell) * ell; q <= K; q *= ell) {
            long long aq;
            if (good)
                aq = t.a * prev1 - ell * prev2;
            else
                aq = t.a * prev1; // multiplicative/additive: a_{ell^k} = a_ell^k
            f.a[(long long)q] = aq;
            prev2 = prev1;
            prev1 = aq;
        }
    }
    for (long long n = 2; n <= K; ++n) {
        if (f.a[n] != 0) continue;
        // factor out the smallest prime power
        long long m = n, ell = 2;
        while (ell * ell <= m && m % ell != 0) ++ell;
        if (m % ell != 0) continue; // n prime, already set
        long long q = 1;
        while (m % ell == 0) { m /= ell; q *= ell; }
        if (m > 1) f.a[n] = f.a[q] * f.a[m];
    }
    return f;
}

} // namespace pjet
