#include "pjet/characters.hpp"

#include <cmath>

namespace pjet {

Rat gm_character_coefficient(long long p, int n) {
    Rat c = Rat(int_pow(Int(p), (unsigned long)(n - 1))) / n;
    return (n % 2 == 1) ? c : -c;
}

DeltaCharacter gm_delta_character(long long p, int target_prec) {
    // keep terms until v_p(p^{n-1}/n) >= target_prec
    int nterms = 1;
    while (nterms - 1 - (long)(std::log((double)nterms) / std::log((double)p)) < target_prec)
        ++nterms;
    nterms += 2;

    auto vars = JetVarSet::make({"x"}, 1, p);
    DeltaPoly psi(vars);
    for (int n = 1; n <= nterms; ++n) {
        Mono m(vars->nvars(), 0);
        m[vars->index(0, 1)] = n;                      // x'^n
        m[vars->index(0, 0)] = (int32_t)(-(long long)p * n); // x^{-pn}
        psi.add_term(m, gm_character_coefficient(p, n));
    }
    DeltaCharacter ch{CharKind::Gm, p, 1, vars, psi, 0, nterms, {}};
    return ch;
}

DeltaCharacter elliptic_delta_character(const EllipticCurveData& E, long long weight_cap) {
    if (!E.ordinary()) throw NotOrdinary("a_p = 0 mod p");
    const long long p = E.p();
    auto vars = JetVarSet::make({"T"}, 2, p);
    UniSeries log = elliptic_log(E.a4, E.a6, (int)weight_cap);

    DeltaPoly ell(vars);
    for (int k = 1; k <= (int)weight_cap; ++k)
        if (log.at(k) != 0) ell += DeltaPoly::variable(vars, 0, 0, k).scaled(log.at(k));

    TruncLimits lim{.weighted_cap = weight_cap};
    DeltaPoly phil = phi(ell, lim);
    DeltaPoly phi2l = phi(phil, lim);
    DeltaPoly Psi = phi2l - phil.scaled(Rat(E.ap)) + ell.scaled(Rat(p));
    if (Psi.min_coeff_valuation() < 1)
        throw IntegralityFailure(
            "Frobenius polynomial does not annihilate the logarithm mod p (check a_p / "
            "canonical lift)");
    DeltaPoly psi = Psi.div_p(false);
    if (!psi.is_p_integral()) throw IntegralityFailure("character coefficients not p-integral");

    DeltaCharacter ch{CharKind::EllipticFormal, p, 2, vars, psi, weight_cap, 0, {}};
    for (int k = 1; k <= (int)weight_cap; ++k)
        if (log.at(k) != 0) ch.log_support.emplace_back(k, padic_valuation(log.at(k), Int(p)));
    return ch;
}

DPsiReport check_dpsi_identity(const EllipticCurveData& E, const DeltaCharacter& psi,
                               int t_degree) {
    const long long p = E.p();
    const auto& vars = psi.vars;
    const long long M = psi.weight_cap;
    // both routes are exact on weighted degree <= M - p^2 (after d/dT'')
    const long long compare_cap = M - (long long)p * p;
    if (compare_cap < t_degree)
        throw TruncationOverflow("character truncation too small for requested T-degree");

    UniSeries log = elliptic_log(E.a4, E.a6, (int)M);
    UniSeries g = log.derivative(); // omega = g(T) dT

    TruncLimits lim{.weighted_cap = M};
    DeltaPoly T = DeltaPoly::variable(vars, 0, 0);
    DeltaPoly phiT = phi(T, lim);
    DeltaPoly phi2T = phi(phiT, lim);

    auto g_at = [&](const DeltaPoly& S) {
        DeltaPoly acc = DeltaPoly::zero(vars);
        DeltaPoly Sk = DeltaPoly::constant(vars, 1);
        for (int k = 0; k <= (int)M; ++k) {
            if (k > 0) {
                if (Sk.is_zero()) break;
                Sk = Sk.mul(S, lim);
            }
            if (g.at(k) != 0) acc += Sk.scaled(g.at(k));
        }
        return acc;
    };
    DeltaPoly g_T = g_at(T), g_phiT = g_at(phiT), g_phi2T = g_at(phi2T);

    TruncLimits cmp{.weighted_cap = compare_cap};
    DPsiReport rep;
    rep.t_degree_checked = t_degree;
    rep.weight_cap_checked = compare_cap;
    rep.exact = true;
    for (int v = 0; v < vars->nvars(); ++v) {
        // route A: p * dpsi/dv
        DeltaPoly lhs = psi.psi.derivative(v).scaled(Rat(p)).truncated(cmp);
        // route B: g(phi^2 T) d(phi^2 T)/dv - a_p g(phi T) d(phi T)/dv + p g(T) dT/dv
        DeltaPoly rhs = g_phi2T.mul(phi2T.derivative(v), cmp) -
                        g_phiT.mul(phiT.derivative(v), cmp).scaled(Rat(E.ap));
        if (v == vars->index(0, 0)) rhs += g_T.scaled(Rat(p)).truncated(cmp);
        rhs = rhs.truncated(cmp);
        if (!(lhs - rhs).is_zero()) {
            rep.exact = false;
            return rep;
        }
    }
    return rep;
}

bool check_character_additivity(const DeltaCharacter& psi, const FormalGroupData& G,
                                long long weight_cap) {
    const long long p = psi.p;
    const int n = psi.order;
    auto vars2 = JetVarSet::make({"T1", "T2"}, n, p);

    std::vector<int> vmap(G.law_vars->nvars(), -1);
    vmap[0] = vars2->index(0, 0);
    vmap[1] = vars2->index(1, 0);

    if (G.trunc < weight_cap)
        throw TruncationOverflow("group law truncation below the additivity cap");

    // jets of the sum point: F, delta F, ..., delta^n F.  delta scales the
    // weighted grading by exactly p, so capping every iterate at weight_cap
    // keeps precisely the monomials that can contribute to the comparison.
    TruncLimits lim{.weighted_cap = weight_cap};
    std::vector<DeltaPoly> sum_jets;
    sum_jets.push_back(G.law.transport(vars2, vmap).truncated(lim));
    for (int k = 1; k <= n; ++k)
        sum_jets.push_back(delta(sum_jets.back(), lim).truncated(lim));

    // substitute T^(k) -> sum_jets[k] into psi, minus psi at each point's jets
    DeltaPoly composed(vars2);
    {
        std::vector<int> pmap(psi.vars->nvars());
        for (int k = 0; k <= n; ++k) pmap[psi.vars->index(0, k)] = vars2->index(0, k);
        DeltaPoly psi_on_T1 = psi.psi.transport(vars2, pmap);
        std::vector<const DeltaPoly*> img2(vars2->nvars(), nullptr);
        for (int k = 0; k <= n; ++k) img2[vars2->index(0, k)] = &sum_jets[k];
        composed = psi_on_T1.substitute(img2, lim);
    }
    std::vector<int> map1(psi.vars->nvars()), map2(psi.vars->nvars());
    for (int k = 0; k <= n; ++k) {
        map1[psi.vars->index(0, k)] = vars2->index(0, k);
        map2[psi.vars->index(0, k)] = vars2->index(1, k);
    }
    DeltaPoly diff = composed - psi.psi.transport(vars2, map1).truncated(lim) -
                     psi.psi.transport(vars2, map2).truncated(lim);
    return diff.truncated(lim).is_zero();
}

PadicElem psi_star_gm(const DeltaCharacter& psi, const PadicElem& alpha) {
    if (psi.kind != CharKind::Gm) throw DomainError("not a Gm character");
    if (!alpha.is_unit()) throw PNotInDomain("Gm character needs a unit");
    if (alpha.prec() < 2) throw InsufficientPrecision("need precision >= 2");
    std::vector<PadicElem> vals{alpha, fermat_quotient(alpha)};
    return psi.psi.eval(vals);
}

PadicElem psi_star_elliptic_tau(const DeltaCharacter& psi, const PadicElem& tau) {
    if (psi.kind != CharKind::EllipticFormal) throw DomainError("not an elliptic character");
    if (tau.valuation() < 1) throw PNotInDomain("formal parameter must vanish mod p");
    if (tau.prec() < 3) throw InsufficientPrecision("need precision >= 3 for order-2 jets");
    PadicElem d1 = fermat_quotient(tau);
    PadicElem d2 = fermat_quotient(d1);
    std::vector<PadicElem> vals{tau.with_prec(d2.prec()), d1.with_prec(d2.prec()), d2};
    PadicElem val = psi.psi.eval(vals);

    // Truncating psi at weight_cap drops the logarithm terms with
    // n > weight_cap/p^2 from its phi^2-part; at the point they are worth
    // v_p(l_n) + n v(tau) - 1 digits.  Report only the digits that survive.
    long long kept_n = psi.weight_cap / (psi.p * psi.p);
    int v = tau.valuation();
    long tail = val.prec();
    for (const auto& [n, vln] : psi.log_support) {
        if (n <= kept_n) continue;
        tail = std::min(tail, vln + (long)n * v - 1);
    }
    if (tail < 1) throw PrecisionLoss("character truncation leaves no valid digits");
    return val.with_prec(std::min<long>(val.prec(), tail));
}

PadicElem psi_star_point(const DeltaCharacter& psi, const EllipticCurveData& E,
                         const EllipticPoint& P, std::optional<long long> m) {
    if (P.is_infinity()) return PadicElem::zero(E.ctx);
    if (P.Z.valuation() >= 1) return psi_star_elliptic_tau(psi, ec_formal_parameter(P));
    long long mult = m.value_or(ec_reduction_order(E, P));
    if (mult % E.p() == 0)
        throw PNotInDomain("no prime-to-p multiple lands in the formal group");
    EllipticPoint Q = ec_scalar_mul(E, Int(mult), P);
    if (Q.Z.valuation() < 1) throw PNotInDomain("supplied multiple not in the formal group");
    PadicElem val = psi_star_elliptic_tau(psi, ec_formal_parameter(Q));
    return val * PadicElem(E.ctx, mult).inverse();
}

} // namespace pjet
