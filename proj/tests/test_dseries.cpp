#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pjet/dseries.hpp"
#include "pjet/io.hpp"

using namespace pjet;

namespace {
const Int kA4 = -13392;
const Int kA6 = -1080432;
const std::vector<Int> k11aMinimal{Int(0), Int(-1), Int(1), Int(-10), Int(-20)};
} // namespace

TEST_CASE("delta on series") {
    auto s = make_dseries(2, 2, -8, 8, 6);
    s.s = DeltaPoly::variable(s.vars, 0, 0);
    CHECK(print_poly(delta_on_series(s).s) == "q'");
    s.s = DeltaPoly::variable(s.vars, 0, 0, 2);
    CHECK(print_poly(delta_on_series(s).s) == "2*q^2*q' + 2*q'^2");
    // delta of a rational constant is the Fermat quotient: delta(3) = -3 at p=2
    s.s = DeltaPoly::constant(s.vars, 3);
    CHECK(print_poly(delta_on_series(s).s) == "-3");
    // Teichmuller-style constants die: delta(1) = 0
    s.s = DeltaPoly::constant(s.vars, 1);
    CHECK(delta_on_series(s).s.is_zero());
    // delta(q') = q''; order headroom is enforced
    s.s = DeltaPoly::variable(s.vars, 0, 1);
    CHECK(print_poly(delta_on_series(s).s) == "q''");
    auto top = make_dseries(2, 1, 0, 4, 4);
    top.s = DeltaPoly::variable(top.vars, 0, 1);
    CHECK_THROWS_AS(delta_on_series(top), OrderOverflow);
}

TEST_CASE("delta on series: p-derivation axioms within caps") {
    std::mt19937_64 rng(9);
    for (long long p : {2LL, 3LL}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto f = make_dseries(p, 2, 0, 60, 24);
            auto g = f;
            for (int t = 0; t < 3; ++t) {
                Mono m(f.vars->nvars(), 0);
                m[f.vars->index(0, 0)] = (int)(rng() % 3);
                m[f.vars->index(0, 1)] = (int)(rng() % 2);
                f.s.add_term(m, Rat((long long)(rng() % 9) - 4));
                Mono m2(f.vars->nvars(), 0);
                m2[f.vars->index(0, 0)] = (int)(rng() % 3);
                g.s.add_term(m2, Rat((long long)(rng() % 9) - 4));
            }
            auto fg = f;
            fg.s = f.s * g.s;
            auto sum = f;
            sum.s = f.s + g.s;
            auto df = delta_on_series(f).s, dg = delta_on_series(g).s;
            auto lhs_add = delta_on_series(sum).s;
            auto cp = (f.s.pow((unsigned long)p) + g.s.pow((unsigned long)p) -
                       sum.s.pow((unsigned long)p))
                          .div_p(true);
            CHECK((lhs_add - df - dg - cp).is_zero());
            auto lhs_mul = delta_on_series(fg).s;
            auto rhs_mul = f.s.pow((unsigned long)p) * dg + g.s.pow((unsigned long)p) * df +
                           (df * dg).scaled(Rat(p));
            CHECK((lhs_mul - rhs_mul).is_zero());
        }
    }
}

TEST_CASE("f1 series") {
    auto f1 = f1_series(5, 10);
    const int qv = f1.vars->index(0, 0);
    const int q1 = f1.vars->index(0, 1);
    // leading term q'/q^p
    Mono lead(f1.vars->nvars(), 0);
    lead[qv] = -5;
    lead[q1] = 1;
    CHECK(f1.s.terms().at(lead) == 1);
    // n = 2 coefficient -p/2
    Mono m2(f1.vars->nvars(), 0);
    m2[qv] = -10;
    m2[q1] = 2;
    CHECK(f1.s.terms().at(m2) == Rat(-5, 2));
    // Fourier expansion is 0: every term carries q'
    for (const auto& [m, c] : f1.s.terms()) CHECK(m[q1] >= 1);
}

TEST_CASE("U operator") {
    auto s = make_dseries(3, 1, 0, 30, 4);
    const int qv = s.vars->index(0, 0);
    for (int n = 1; n <= 30; ++n) {
        Mono m(s.vars->nvars(), 0);
        m[qv] = n;
        s.s.add_term(m, Rat(n));
    }
    auto us = u_operator(s);
    // U(sum n q^n) = sum 3n q^n
    for (const auto& [m, c] : us.s.terms()) CHECK(c == Rat(3) * m[qv]);
    // U(q^p) = q, U(q) = 0
    auto t = make_dseries(5, 1, 0, 10, 4);
    t.s = DeltaPoly::variable(t.vars, 0, 0, 5);
    CHECK(print_poly(u_operator(t).s) == "q");
    t.s = DeltaPoly::variable(t.vars, 0, 0);
    CHECK(u_operator(t).s.is_zero());
    // U kills sum_{(n,p)=1} a_n/n q^n
    auto nf = newform_from_curve(k11aMinimal, 11, 30);
    auto z = make_dseries(7, 1, 0, 30, 4);
    for (int n = 1; n <= 30; ++n) {
        if (n % 7 == 0 || nf.a[n] == 0) continue;
        Mono m(z.vars->nvars(), 0);
        m[z.vars->index(0, 0)] = n;
        z.s.add_term(m, Rat(nf.a[n]) / n);
    }
    CHECK(u_operator(z).s.is_zero());
    // jet terms are rejected
    auto bad = make_dseries(3, 1, 0, 10, 4);
    bad.s = DeltaPoly::variable(bad.vars, 0, 1);
    CHECK_THROWS_AS(u_operator(bad), DomainError);
}

TEST_CASE("fsharp congruence (worked example)") {
    auto ctx = PadicCtx::make(7, 10);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    auto nf = newform_from_curve(k11aMinimal, 11, 14);
    auto rep = fsharp_expansion(E, nf, 14);
    CHECK(rep.congruent);
    CHECK(rep.difference.s.is_zero());

    // Fourier part of the formula: sum_{(n,p)=1} a_n/n q^n mod p
    const int q1 = rep.formula.vars->index(0, 1);
    const int qv = rep.formula.vars->index(0, 0);
    for (const auto& [m, c] : rep.formula.s.terms()) {
        if (m[q1] != 0) continue;
        long long n = m[qv];
        CHECK(n % 7 != 0);
        long long expect = ((nf.a[n] % 7) + 7) % 7 * gfp_inv(n % 7, 7) % 7;
        CHECK(c == Rat(expect));
    }

    // with a_p = 0 input the middle term of the formula vanishes (structure)
    // use a supersingular-shaped curve record only for the formula builder:
    // covered by the formula loop: coefficient (p - ap) % p * a_m with ap = 0
    // is exercised through hecke tests; here check the q' block matches -a_p a_m
    for (const auto& [m, c] : rep.formula.s.terms()) {
        if (m[q1] != 1) continue;
        long long e = m[qv];
        CHECK(e % 7 == 0); // exponents mp - p
        long long mm = e / 7 + 1;
        long long expect = (7 - ((E.ap % 7) + 7) % 7) % 7 * (((nf.a[mm] % 7) + 7) % 7) % 7;
        CHECK(c == Rat(expect));
    }
}

TEST_CASE("fsharp rejects bad primes") {
    auto ctx = PadicCtx::make(5, 8);
    auto E = make_elliptic_curve(ctx, kA4, kA6);
    NewformData nf;
    nf.level = 55; // p divides the level
    nf.a.assign(21, 0);
    nf.a[1] = 1;
    CHECK_THROWS_AS(fsharp_expansion(E, nf, 10), BadReduction);
}

TEST_CASE("pT_m(p) worked examples") {
    for (long long p : {2LL, 3LL, 5LL}) {
        auto f = make_dseries(p, 1, 0, 8, 4);
        f.s = DeltaPoly::variable(f.vars, 0, 0);
        auto h = hecke_pTm(f, 0);
        CHECK(print_poly(h.s) == "q^" + std::to_string(p));
    }
    // constants map to themselves at m = 0
    auto fc = make_dseries(3, 1, 0, 8, 4);
    fc.s = DeltaPoly::constant(fc.vars, 2);
    CHECK(print_poly(hecke_pTm(fc, 0).s) == "2");
    // m > 0 kills the second term mod p
    auto f2 = make_dseries(3, 1, 0, 8, 4);
    f2.s = DeltaPoly::variable(f2.vars, 0, 0);
    auto h2 = hecke_pTm(f2, 2);
    CHECK(h2.s.is_zero()); // f_(p) = s_1 dies under the substitution
}

TEST_CASE("delta-p-symmetry detection and linearity") {
    std::mt19937_64 rng(31);
    for (long long p : {2LL, 3LL}) {
        // generators known to be symmetric: q^n and q'
        auto mk = [&](int n, int jet, long long coeff) {
            auto f = make_dseries(p, 1, 0, 10, 6);
            Mono m(f.vars->nvars(), 0);
            m[f.vars->index(0, 0)] = n;
            m[f.vars->index(0, 1)] = jet;
            f.s.add_term(m, Rat(coeff));
            return f;
        };
        CHECK(delta_p_symmetric_solve(mk(3, 0, 1)).symmetric);
        CHECK(delta_p_symmetric_solve(mk(0, 1, 1)).symmetric);
        CHECK_FALSE(delta_p_symmetric_solve([&] {
                        auto f = mk(1, 0, 1);
                        Mono m(f.vars->nvars(), 0);
                        m[f.vars->index(0, 0)] = 1;
                        m[f.vars->index(0, 1)] = 1;
                        f.s.add_term(m, Rat(1));
                        return f;
                    }())
                        .symmetric);

        // linearity on random symmetric combinations
        for (int trial = 0; trial < 6; ++trial) {
            auto f = mk(1 + (int)(rng() % 4), 0, 1 + (long long)(rng() % (p - 1 + 1)));
            auto g = mk(1 + (int)(rng() % 4), 0, 1 + (long long)(rng() % (p - 1 + 1)));
            auto sum = f;
            sum.s = f.s + g.s;
            auto hf = hecke_pTm(f, 0).s;
            auto hg = hecke_pTm(g, 0).s;
            auto hs = hecke_pTm(sum, 0).s;
            auto diff = hs - hf - hg;
            CHECK(to_gfp(diff).is_zero());
        }

        // closure: the image is again delta-p-symmetric
        auto h = hecke_pTm(mk(2, 0, 1), 0);
        CHECK(delta_p_symmetric_solve(h).symmetric);
    }
    // NotDeltaPSymmetric raises through the operator
    auto bad = make_dseries(2, 1, 0, 10, 6);
    Mono m(bad.vars->nvars(), 0);
    m[bad.vars->index(0, 0)] = 1;
    m[bad.vars->index(0, 1)] = 1;
    bad.s.add_term(m, Rat(1));
    CHECK_THROWS_AS(hecke_pTm(bad, 0), NotDeltaPSymmetric);
}

TEST_CASE("classical T_ell on q-expansions") {
    // the level-11 newform is a T_ell eigenform with eigenvalue a_ell
    auto nf = newform_from_curve(k11aMinimal, 11, 30);
    auto f = make_dseries(7, 1, 0, 30, 4);
    const int qv = f.vars->index(0, 0);
    for (int n = 1; n <= 30; ++n) {
        if (nf.a[n] == 0) continue;
        Mono m(f.vars->nvars(), 0);
        m[qv] = n;
        f.s.add_term(m, Rat(nf.a[n]));
    }
    for (long long ell : {2LL, 3LL, 5LL, 13LL}) {
        auto Tf = hecke_classical_Tl(f, ell, 2);
        // compare against a_ell * f within the shrunken window
        DeltaPoly expect(f.vars);
        for (const auto& [m, c] : f.s.terms())
            if (m[qv] <= Tf.meta.q_high) expect.add_term(m, c * Rat(nf.a[ell]));
        CHECK(Tf.s == expect);
    }
    CHECK_THROWS_AS(hecke_classical_Tl(f, 7, 2), DomainError); // ell = p
    CHECK_THROWS_AS(hecke_classical_Tl(f, 6, 2), DomainError); // not prime
}

TEST_CASE("series file round-trip") {
    auto f1 = f1_series(3, 6);
    std::string text = dseries_to_json(f1);
    auto back = dseries_from_json(text);
    CHECK(back.s == f1.s);
    CHECK(back.meta.p == f1.meta.p);
    CHECK(dseries_to_json(back) == text);
}
