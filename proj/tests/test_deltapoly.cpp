#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pjet/poly.hpp"

using namespace pjet;

namespace {

DeltaPoly random_poly(const VarsPtr& vars, std::mt19937_64& rng, int terms, int maxdeg,
                      int max_order = 0) {
    DeltaPoly f(vars);
    for (int t = 0; t < terms; ++t) {
        Mono m(vars->nvars(), 0);
        for (int v = 0; v < vars->nvars(); ++v) {
            if (vars->order_of(v) > max_order) continue;
            m[v] = (int)(rng() % (maxdeg + 1));
        }
        f.add_term(m, Rat((long long)(rng() % 19) - 9));
    }
    return f;
}

} // namespace

TEST_CASE("phi substitution") {
    auto vs2 = JetVarSet::make({"x"}, 1, 2);
    auto x = DeltaPoly::variable(vs2, 0, 0);
    CHECK(print_poly(phi(x)) == "x^2 + 2*x'");
    CHECK(phi(DeltaPoly::constant(vs2, 1)) == DeltaPoly::constant(vs2, 1));

    auto vs3 = JetVarSet::make({"x", "y"}, 1, 3);
    auto f = DeltaPoly::variable(vs3, 0, 0) + DeltaPoly::variable(vs3, 1, 0);
    auto expect = DeltaPoly::variable(vs3, 0, 0, 3) + DeltaPoly::variable(vs3, 0, 1).scaled(3) +
                  DeltaPoly::variable(vs3, 1, 0, 3) + DeltaPoly::variable(vs3, 1, 1).scaled(3);
    CHECK(phi(f) == expect);

    // OrderOverflow when f already uses the top order
    auto top = DeltaPoly::variable(vs2, 0, 1);
    CHECK_THROWS_AS(phi(top), OrderOverflow);
}

TEST_CASE("delta on the jet ring") {
    auto vs = JetVarSet::make({"x", "y"}, 2, 2);
    auto x = DeltaPoly::variable(vs, 0, 0);
    auto y = DeltaPoly::variable(vs, 1, 0);
    CHECK(delta(x) == DeltaPoly::variable(vs, 0, 1));
    CHECK(print_poly(delta(x * x)) == "2*x^2*x' + 2*x'^2");
    CHECK(print_poly(delta(x + y)) == "-x*y + x' + y'");
    // delta of x^2 equals the Leibniz expansion of delta(x*x)
    auto dx = delta(x);
    auto leibniz = x.pow(2) * dx + x.pow(2) * dx + (dx * dx).scaled(2);
    CHECK(delta(x * x) == leibniz);
    // rejects non-p-integral input
    CHECK_THROWS_AS(delta(x.scaled(Rat(1, 2))), NonIntegralInput);
}

TEST_CASE("C_p closed forms") {
    auto vs2 = JetVarSet::make({"x", "y"}, 0, 2);
    auto x2 = DeltaPoly::variable(vs2, 0, 0), y2 = DeltaPoly::variable(vs2, 1, 0);
    CHECK(print_poly(c_p(x2, y2)) == "-x*y");
    CHECK(c_p(x2, DeltaPoly::zero(vs2)).is_zero());

    auto vs3 = JetVarSet::make({"x", "y"}, 0, 3);
    auto x3 = DeltaPoly::variable(vs3, 0, 0), y3 = DeltaPoly::variable(vs3, 1, 0);
    CHECK(print_poly(c_p(x3, y3)) == "-x^2*y - x*y^2");
}

TEST_CASE("axioms as polynomial identities") {
    std::mt19937_64 rng(17);
    for (long long p : {2LL, 3LL}) {
        auto vs = JetVarSet::make({"x", "y"}, 3, p);
        for (int trial = 0; trial < 6; ++trial) {
            auto f = random_poly(vs, rng, 3, 2);
            auto g = random_poly(vs, rng, 3, 2);
            CHECK((delta(f + g) - delta(f) - delta(g) - c_p(f, g)).is_zero());
            auto lhs = delta(f * g);
            auto rhs = f.pow((unsigned long)p) * delta(g) + g.pow((unsigned long)p) * delta(f) +
                       (delta(f) * delta(g)).scaled(Rat(p));
            CHECK((lhs - rhs).is_zero());
        }
    }
}

TEST_CASE("phi(f) - f^p divisible by p, randomized") {
    std::mt19937_64 rng(23);
    for (long long p : {2LL, 3LL, 5LL}) {
        auto vs = JetVarSet::make({"x", "y"}, 2, p);
        for (int trial = 0; trial < 60; ++trial) {
            auto f = random_poly(vs, rng, 4, 2, 1);
            auto diff = phi(f) - f.pow((unsigned long)p);
            CHECK(diff.min_coeff_valuation() >= (diff.is_zero() ? 0 : 1));
        }
    }
}

TEST_CASE("canonical prolongation") {
    auto vs = JetVarSet::make({"x"}, 2, 2);
    std::vector<DeltaPoly> xi{DeltaPoly::constant(vs, 1)}; // d/dx
    auto xp = DeltaPoly::variable(vs, 0, 1);
    CHECK(print_poly(prolong_derivation(xi, xp, 1)) == "-x + p^-1");
    CHECK(prolong_derivation(xi, DeltaPoly::constant(vs, 7), 1).is_zero());
    CHECK(prolong_derivation(xi, DeltaPoly::variable(vs, 0, 0), 0) ==
          DeltaPoly::constant(vs, 1));

    // commutation with phi: xi(phi(f)) = phi(xi(f)) for f of low order
    auto vs5 = JetVarSet::make({"x"}, 3, 5);
    std::vector<DeltaPoly> xi5{DeltaPoly::variable(vs5, 0, 0)}; // x d/dx
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = random_poly(vs5, rng, 3, 2, 1);
        auto lhs = prolong_derivation(xi5, phi(f), 3);
        auto rhs = phi(prolong_derivation(xi5, f, 2));
        CHECK((lhs - rhs).is_zero());
    }

    // p^n * image is integral
    auto img = prolong_derivation(xi, delta(delta(DeltaPoly::variable(vs, 0, 0))), 2);
    CHECK(img.scaled(Rat(4)).is_integral());
}

TEST_CASE("variational symmetry modes") {
    auto vs = JetVarSet::make({"x"}, 1, 2);
    std::vector<DeltaPoly> zero_field{DeltaPoly::zero(vs)};
    auto xp = DeltaPoly::variable(vs, 0, 1);
    CHECK(is_variational_symmetry(zero_field, {xp}, 1, true).holds);

    std::vector<DeltaPoly> ddx{DeltaPoly::constant(vs, 1)};
    auto rep = is_variational_symmetry(ddx, {xp}, 1, true);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(print_poly(*rep.witness) == "-x + p^-1");

    // L = {x}, xi(x) = x: infinitesimal symmetry (image x lies in the span)
    std::vector<DeltaPoly> euler{DeltaPoly::variable(vs, 0, 0)};
    CHECK(is_variational_symmetry(euler, {DeltaPoly::variable(vs, 0, 0)}, 0, false).holds);
    // but not variational
    CHECK_FALSE(is_variational_symmetry(euler, {DeltaPoly::variable(vs, 0, 0)}, 0, true).holds);
}

TEST_CASE("printer and parser round-trip") {
    std::mt19937_64 rng(41);
    for (long long p : {2LL, 5LL}) {
        auto vs = JetVarSet::make({"x", "y"}, 3, p);
        for (int trial = 0; trial < 40; ++trial) {
            auto f = random_poly(vs, rng, 5, 3, 3);
            if (trial % 3 == 0) f = f.scaled(Rat(1, (long long)p * p));
            CHECK(parse_poly(vs, print_poly(f)) == f);
        }
    }
    auto vs = JetVarSet::make({"x"}, 4, 3);
    // high orders print as x^(4)
    auto f = DeltaPoly::variable(vs, 0, 4, 2);
    CHECK(print_poly(f) == "x^(4)^2");
    CHECK(parse_poly(vs, print_poly(f)) == f);
    // Laurent exponents survive
    auto g = DeltaPoly::variable(vs, 0, 0, -3).scaled(Rat(2));
    CHECK(parse_poly(vs, print_poly(g)) == g);
}

TEST_CASE("parse errors carry positions") {
    auto vs = JetVarSet::make({"x"}, 1, 2);
    CHECK_THROWS_AS(parse_poly(vs, "x + "), ParseError);
    CHECK_THROWS_AS(parse_poly(vs, "z^2"), ParseError);
    CHECK_THROWS_AS(parse_poly(vs, "x^"), ParseError);
    try {
        parse_poly(vs, "x + z");
    } catch (const ParseError& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("variable name constraints") {
    CHECK_THROWS_AS(JetVarSet::make({"p"}, 1, 2), DomainError);
    CHECK_THROWS_AS(JetVarSet::make({"x", "x"}, 1, 2), DomainError);
}
