#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pjet/padic.hpp"

using namespace pjet;

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PadicCtx::make(4, 10), DomainError);
    CHECK_THROWS_AS(PadicCtx::make(1, 10), DomainError);
    CHECK_THROWS_AS(PadicCtx::make(5, 0), DomainError);
    // (t+1)^2 = t^2 + 2t + 1 is reducible mod 3
    CHECK_THROWS_AS(PadicCtx::make_ext(3, 4, {Int(1), Int(2), Int(1)}), DomainError);
    CHECK_NOTHROW(PadicCtx::make_ext(3, 4, {Int(1), Int(0), Int(1)}));
}

TEST_CASE("fermat quotient basics") {
    auto ctx = PadicCtx::make(5, 10);
    PadicElem a(ctx, 2);
    PadicElem d = fermat_quotient(a);
    CHECK(d.prec() == 9);
    CHECK(d.balanced() == -6); // (2 - 2^5)/5
    CHECK(fermat_quotient(PadicElem(ctx, 1)).is_zero());
    CHECK(fermat_quotient(teichmuller(ctx, Int(2))).is_zero());
    CHECK_THROWS_AS(fermat_quotient(PadicElem(ctx, 2, 1)), InsufficientPrecision);
}

TEST_CASE("teichmuller representatives") {
    auto ctx2 = PadicCtx::make(5, 2);
    CHECK(teichmuller(ctx2, Int(2)).lift() == 7);
    CHECK(teichmuller(ctx2, Int(0)).is_zero());
    CHECK(teichmuller(ctx2, Int(1)).lift() == 1);
    // x^{p^m} = x at full precision
    for (long long p : {2LL, 3LL, 7LL}) {
        auto ctx = PadicCtx::make(p, 9);
        for (long long c = 0; c < p; ++c) {
            PadicElem t = teichmuller(ctx, Int(c));
            CHECK(t.pow(p).eq_at_min_prec(t));
        }
    }
    auto e = PadicCtx::make_ext(2, 8, {Int(1), Int(1), Int(1)});
    PadicElem t = teichmuller(e, std::vector<Int>{Int(0), Int(1)});
    CHECK(t.pow(4).eq_at_min_prec(t));
    CHECK_FALSE(t.pow(2).eq_at_min_prec(t)); // genuinely order 3
}

TEST_CASE("frobenius lift") {
    auto ctx = PadicCtx::make(7, 8);
    PadicElem a(ctx, 1234);
    CHECK(frobenius(a).eq_at_min_prec(a)); // identity on Z_p

    auto e = PadicCtx::make_ext(2, 8, {Int(1), Int(1), Int(1)});
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        auto x = PadicElem::from_coeffs(e, {Int((long long)(rng() % 256)), Int((long long)(rng() % 256))}, 8);
        auto y = PadicElem::from_coeffs(e, {Int((long long)(rng() % 256)), Int((long long)(rng() % 256))}, 8);
        CHECK(frobenius(x * y).eq_at_min_prec(frobenius(x) * frobenius(y)));
        CHECK(frobenius(x + y).eq_at_min_prec(frobenius(x) + frobenius(y)));
        CHECK((frobenius(x) - x.pow(2)).valuation() >= 1); // phi(a) = a^p mod p
    }
    // phi on the generator solves the modulus and reduces to t^2
    PadicElem gen = PadicElem::from_coeffs(e, {Int(0), Int(1)}, 8);
    PadicElem fg = frobenius(gen);
    CHECK((fg * fg + fg + PadicElem::one(e)).is_zero()); // t^2 + t + 1 = 0
}

TEST_CASE("p-derivation axioms, numeric") {
    std::mt19937_64 rng(5);
    for (long long p : {2LL, 3LL, 5LL, 7LL}) {
        auto ctx = PadicCtx::make(p, 12);
        for (int i = 0; i < 50; ++i) {
            PadicElem a(ctx, Int((long long)(rng() % 1000000)));
            PadicElem b(ctx, Int((long long)(rng() % 1000000)));
            PadicElem da = fermat_quotient(a), db = fermat_quotient(b);
            // C_p(a, b) = (a^p + b^p - (a+b)^p)/p
            PadicElem cp = (a.pow(p) + b.pow(p) - (a + b).pow(p)).div_exact_p();
            CHECK(fermat_quotient(a + b).eq_at_min_prec(da + db + cp));
            PadicElem pde = (da * db) * PadicElem(ctx, p);
            CHECK(fermat_quotient(a * b).eq_at_min_prec(a.pow(p) * db + b.pow(p) * da + pde));
            // phi(a) = a^p + p delta(a)
            CHECK(frobenius(a).eq_mod(a.pow(p) + PadicElem(ctx, p) * da, 11));
        }
    }
}

TEST_CASE("precision model") {
    auto ctx = PadicCtx::make(3, 8);
    PadicElem a(ctx, 10, 5), b(ctx, 4, 7);
    CHECK((a + b).prec() == 5);
    CHECK((a * b).prec() == 5);
    // division by p consumes a digit and rejects units
    PadicElem c(ctx, 6);
    CHECK(c.div_exact_p().prec() == 7);
    CHECK(c.div_exact_p().lift() == 2);
    CHECK_THROWS_AS(PadicElem(ctx, 5).div_exact_p(), InexactDivision);
    // division by a unit preserves precision
    PadicElem u(ctx, 5);
    CHECK((a / u).prec() == 5);
    CHECK(((a / u) * u).eq_at_min_prec(a));
    // divide_exact with valuation
    PadicElem nine(ctx, 18), three(ctx, 3);
    PadicElem q = nine.divide_exact(three);
    CHECK(q.lift() == 6);
    CHECK(q.prec() == 7);
    CHECK_THROWS_AS(a.with_prec(6), InsufficientPrecision);
}

TEST_CASE("inverse and units") {
    auto ctx = PadicCtx::make(5, 10);
    CHECK_THROWS_AS(PadicElem(ctx, 10).inverse(), NotInvertible);
    PadicElem u(ctx, 7);
    CHECK((u * u.inverse()).eq_at_min_prec(PadicElem::one(ctx)));
    auto e = PadicCtx::make_ext(3, 6, {Int(1), Int(0), Int(1)});
    auto x = PadicElem::from_coeffs(e, {Int(2), Int(5)}, 6);
    CHECK((x * x.inverse()).eq_at_min_prec(PadicElem::one(e)));
    CHECK_THROWS_AS(require_same_ctx(u, PadicElem::one(e)), ContextMismatch);
}

TEST_CASE("from_rational embeds Z_(p)") {
    auto ctx = PadicCtx::make(7, 6);
    PadicElem x = PadicElem::from_rational(ctx, Rat(1) / 3);
    CHECK((x * PadicElem(ctx, 3)).eq_at_min_prec(PadicElem::one(ctx)));
    CHECK_THROWS_AS(PadicElem::from_rational(ctx, Rat(1) / 7), DomainError);
}
