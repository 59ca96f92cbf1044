#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pjet/characters.hpp"

using namespace pjet;

namespace {
const Int kA4 = -13392;
const Int kA6 = -1080432;
} // namespace

TEST_CASE("Gm character series coefficients") {
    // u - (p/2) u^2 + (p^2/3) u^3 - ...
    CHECK(gm_character_coefficient(5, 1) == 1);
    CHECK(gm_character_coefficient(5, 2) == Rat(-5, 2));
    CHECK(gm_character_coefficient(5, 3) == Rat(25, 3));
    CHECK(gm_character_coefficient(3, 4) == Rat(-27, 4));
}

TEST_CASE("Gm character evaluation") {
    auto ch = gm_delta_character(5, 12);
    auto ctx = PadicCtx::make(5, 12);
    CHECK(psi_star_gm(ch, PadicElem(ctx, 1)).is_zero());
    CHECK_THROWS_AS(psi_star_gm(ch, PadicElem(ctx, 10)), PNotInDomain);

    // additivity: psi(ab) = psi(a) + psi(b), exact at one lost digit
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        long long av = 1 + (long long)(rng() % 1000000), bv = 1 + (long long)(rng() % 1000000);
        if (av % 5 == 0) ++av;
        if (bv % 5 == 0) ++bv;
        PadicElem a(ctx, av), b(ctx, bv);
        CHECK(psi_star_gm(ch, a * b).eq_mod(psi_star_gm(ch, a) + psi_star_gm(ch, b), 11));
    }

    // direct series evaluation at alpha = 1 + p equals the operator value
    PadicElem alpha(ctx, 6);
    PadicElem u = fermat_quotient(alpha) * alpha.pow(5).inverse();
    PadicElem acc = PadicElem::zero(ctx).with_prec(11);
    for (int n = 1; n <= ch.series_terms; ++n)
        acc = acc + PadicElem::from_rational(ctx, gm_character_coefficient(5, n)) * u.pow(n);
    CHECK(psi_star_gm(ch, alpha).eq_mod(acc, 11));
}

TEST_CASE("elliptic character construction") {
    auto ctx = PadicCtx::make(7, 10);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    auto psi = elliptic_delta_character(E, 56);
    CHECK(psi.psi.is_p_integral());
    // psi(0) = 0 and the lowest T-term is l(T)'s: coefficient of T is 1
    Mono m(psi.vars->nvars(), 0);
    CHECK(psi.psi.terms().find(m) == psi.psi.terms().end());
    m[psi.vars->index(0, 0)] = 1;
    auto it = psi.psi.terms().find(m);
    REQUIRE(it != psi.psi.terms().end());
    CHECK(it->second == 1);

    // wrong a_p: the division by p must fail loudly
    EllipticCurveData bad = E;
    bad.ap = E.ap + 1;
    CHECK_THROWS_AS(elliptic_delta_character(bad, 28), IntegralityFailure);
    // supersingular input is rejected
    auto ctx5s = PadicCtx::make(5, 8);
    EllipticCurveData ss{ctx5s, Int(1), Int(0), 0, true};
    CHECK_THROWS_AS(elliptic_delta_character(ss, 28), NotOrdinary);
}

TEST_CASE("dpsi identity, exact to T-degree 20") {
    auto ctx = PadicCtx::make(7, 10);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    auto psi = elliptic_delta_character(E, 72);
    auto rep = check_dpsi_identity(E, psi, 20);
    CHECK(rep.exact);
    CHECK(rep.t_degree_checked == 20);
}

TEST_CASE("symbolic additivity on the formal group") {
    // p = 5 exercises T' and (cap >= p^2) T''-substitution
    auto ctx = PadicCtx::make(5, 8);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    auto psi = elliptic_delta_character(E, 40);
    auto G = make_elliptic_group(5, 30, kA4, kA6);
    CHECK(check_character_additivity(psi, G, 30));
}

TEST_CASE("psi_star on points") {
    auto ctx = PadicCtx::make(7, 12);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    auto psi = elliptic_delta_character(E, 56);
    CHECK(psi_star_point(psi, E, ec_infinity(E)).is_zero());

    auto lift_point = [&](long long x0, long long y0) {
        Int fx = Int(x0) * x0 * x0 + kA4 * x0 + kA6;
        PadicElem y(ctx, y0), fxe(ctx, fx);
        for (int it = 0; it < 6; ++it) y = y - (y * y - fxe).divide_exact(y + y);
        return ec_affine(E, PadicElem(ctx, x0), y);
    };
    auto P = lift_point(1, 2);
    long long ord = ec_reduction_order(E, P);
    REQUIRE(ord % 7 != 0);

    // translation path: psi(P) = psi(ord P)/ord
    PadicElem via_translation = psi_star_point(psi, E, P);
    auto Q = ec_scalar_mul(E, Int(ord), P);
    PadicElem direct = psi_star_elliptic_tau(psi, ec_formal_parameter(Q));
    PadicElem expected = direct * PadicElem(ctx, ord).inverse();
    CHECK(via_translation.eq_mod(expected, std::min(via_translation.prec(), expected.prec())));

    // evaluation against the closed form (p+1-a_p)/p * l(tau): psi_* reports
    // exactly the digits that survive its truncation
    auto psi_big = elliptic_delta_character(E, 300);
    {
        Int tau_int = 350;
        auto lg = elliptic_log(kA4, kA6, 45);
        Rat L = 0, tn = 1;
        for (int n = 1; n <= 45; ++n) {
            tn *= Rat(tau_int);
            L += lg.at(n) * tn;
        }
        Rat closed = L * Rat(7 + 1 - E.ap) / 7;
        PadicElem v = psi_star_elliptic_tau(psi_big, PadicElem(ctx, tau_int));
        CHECK(v.prec() >= 5);
        CHECK(v.eq_mod(PadicElem::from_rational(ctx, closed).with_prec(v.prec()), v.prec()));
    }

    // additivity at kernel points, sums taken through the formal group law
    auto G = make_elliptic_group(7, 13, kA4, kA6);
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 40 && checked < 10; ++trial) {
        auto Qa = ec_scalar_mul(E, Int(ord * (1 + (long long)(rng() % 20))), P);
        auto Qb = ec_scalar_mul(E, Int(ord * (1 + (long long)(rng() % 20))), P);
        if (Qa.is_infinity() || Qb.is_infinity()) continue;
        PadicElem ta = ec_formal_parameter(Qa), tb = ec_formal_parameter(Qb);
        if (ta.prec() < 9 || tb.prec() < 9) continue;
        PadicElem ts = formal_sum_tau(G, ta, tb);
        PadicElem lhs = psi_star_elliptic_tau(psi_big, ts);
        PadicElem rhs = psi_star_elliptic_tau(psi_big, ta) + psi_star_elliptic_tau(psi_big, tb);
        int digits = std::min(lhs.prec(), rhs.prec());
        CHECK(digits >= 4);
        CHECK(lhs.eq_mod(rhs, digits));
        ++checked;
    }
    CHECK(checked >= 5);
}
