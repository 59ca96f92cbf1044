#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pjet/io.hpp"
#include "pjet/jetspace.hpp"

using namespace pjet;

namespace {

SchemePresentation mu_p_scheme(long long p) {
    auto vars = JetVarSet::make({"x"}, 0, p);
    auto one = DeltaPoly::constant(vars, 1);
    auto f = (DeltaPoly::variable(vars, 0, 0) + one).pow((unsigned long)p) - one;
    return SchemePresentation::make(vars, {f}, "mu_p");
}

SchemePresentation gm_scheme(long long p) {
    auto vars = JetVarSet::make({"x", "y"}, 0, p);
    auto f = DeltaPoly::variable(vars, 0, 0) * DeltaPoly::variable(vars, 1, 0) -
             DeltaPoly::constant(vars, 1);
    return SchemePresentation::make(vars, {f}, "Gm");
}

} // namespace

TEST_CASE("build_jet basics") {
    // X: (x | x), n = 1 -> relations (x, x')
    auto vars = JetVarSet::make({"x"}, 0, 3);
    auto X = SchemePresentation::make(vars, {DeltaPoly::variable(vars, 0, 0)}, "origin");
    auto J = build_jet(X, 1);
    CHECK(J.relations.size() == 1);
    CHECK(print_poly(J.relations[0][0]) == "x");
    CHECK(print_poly(J.relations[0][1]) == "x'");

    // affine line: no relations at any order
    auto A1 = SchemePresentation::make(JetVarSet::make({"x"}, 0, 3), {}, "A1");
    auto JA = build_jet(A1, 2);
    CHECK(JA.relations.empty());
    CHECK(JA.vars->nvars() == 3);

    // mu_2 at p=2, n=1: the worked example relations
    auto J2 = build_jet(mu_p_scheme(2), 1);
    CHECK(print_poly(J2.relations[0][0]) == "x^2 + 2*x");
    auto expect = parse_poly(J2.vars, "2*x^2*x' - 2*x^3 + 2*x'^2 - x^2 + 2*x'");
    CHECK(J2.relations[0][1] == expect);
}

TEST_CASE("jet relations extend (prefix property)") {
    auto X = mu_p_scheme(3);
    auto J2 = build_jet(X, 2);
    auto J3 = build_jet(X, 3);
    for (int j = 0; j <= 2; ++j) {
        // same polynomial transported into the bigger variable set
        std::vector<int> vmap(J2.vars->nvars());
        for (int k = 0; k <= 2; ++k) vmap[J2.vars->index(0, k)] = J3.vars->index(0, k);
        CHECK(J2.relations[0][j].transport(J3.vars, vmap) == J3.relations[0][j]);
    }
}

TEST_CASE("jet of a point on Gm") {
    auto X = gm_scheme(5);
    auto ctx = PadicCtx::make(5, 10);
    PadicElem three(ctx, 3);
    auto alpha = std::vector<PadicElem>{three, three.inverse()};
    auto jets = jet_of_point(X, 1, alpha);
    CHECK(jets[0][1].eq_at_min_prec(PadicElem(ctx, -48, 9))); // (3 - 3^5)/5
    // the jet satisfies the J^1 relations at reduced precision
    auto J = build_jet(X, 1);
    std::vector<PadicElem> flat;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k <= 1; ++k) flat.push_back(jets[i][k].with_prec(9));
    for (const auto& row : J.relations)
        for (const auto& f : row) CHECK(f.eval(flat).is_zero());
}

TEST_CASE("teichmuller points have zero jets") {
    auto X = gm_scheme(7);
    auto ctx = PadicCtx::make(7, 8);
    auto t = teichmuller(ctx, Int(3));
    auto jets = jet_of_point(X, 2, {t, t.inverse()});
    CHECK(jets[0][1].is_zero());
    CHECK(jets[0][2].is_zero());
    CHECK(jets[1][1].is_zero());
}

TEST_CASE("jet_of_point error paths") {
    auto X = gm_scheme(5);
    auto ctx = PadicCtx::make(5, 10);
    CHECK_THROWS_AS(jet_of_point(X, 1, {PadicElem(ctx, 2), PadicElem(ctx, 2)}), NotOnScheme);
    auto ctx2 = PadicCtx::make(5, 2);
    PadicElem t(ctx2, 3);
    CHECK_THROWS_AS(jet_of_point(X, 2, {t, t.inverse()}), InsufficientPrecision);
}

TEST_CASE("ideal membership mod p") {
    auto J = build_jet(mu_p_scheme(2), 1);
    CHECK(ideal_membership_mod_p(DeltaPoly::variable(J.vars, 0, 0, 2), J));
    CHECK_FALSE(ideal_membership_mod_p(DeltaPoly::constant(J.vars, 1), J));

    // (x')^p lies in the jet ideal of mu_p at order >= 2 for odd p.
    // At p = 2 the honest point -2 of mu_2(Z_2) has delta(-2) = -3, odd, so
    // its jet has x' = 1 mod 2 and no jet ideal can contain (x')^2.
    {
        auto J3 = build_jet(mu_p_scheme(3), 2);
        CHECK(ideal_membership_mod_p(DeltaPoly::variable(J3.vars, 0, 1, 3), J3));
        auto J2 = build_jet(mu_p_scheme(2), 2);
        CHECK_FALSE(ideal_membership_mod_p(DeltaPoly::variable(J2.vars, 0, 1, 2), J2));
    }
}

TEST_CASE("Jacobian solvability proxy at sampled points") {
    auto X = gm_scheme(5);
    auto ctx = PadicCtx::make(5, 10);
    auto J = build_jet(X, 2);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        PadicElem x(ctx, Int(1 + (long long)(rng() % 100000) * 5 % 99991));
        if (!x.is_unit()) continue;
        auto jets = jet_of_point(X, 2, {x, x.inverse()});
        CHECK(jacobian_solvable_at(J, jets));
    }
}

TEST_CASE("scheme file round-trip") {
    auto X = gm_scheme(5);
    std::string text = scheme_to_json(X);
    auto Y = scheme_from_json(text);
    CHECK(Y.label == X.label);
    CHECK(Y.vars->same(*X.vars));
    REQUIRE(Y.relations.size() == X.relations.size());
    for (size_t i = 0; i < X.relations.size(); ++i) CHECK(Y.relations[i] == X.relations[i]);
    CHECK(scheme_to_json(Y) == text); // bit-exact
}
