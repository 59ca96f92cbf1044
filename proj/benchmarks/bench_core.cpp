#include <benchmark/benchmark.h>

#include "pjet/characters.hpp"
#include "pjet/groebner.hpp"
#include "pjet/witt.hpp"

using namespace pjet;

static void BM_FermatQuotient(benchmark::State& state) {
    auto ctx = PadicCtx::make(7, (int)state.range(0));
    PadicElem a(ctx, 123456789);
    for (auto _ : state) {
        auto d = fermat_quotient(a);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_FermatQuotient)->Arg(12)->Arg(48);

static void BM_DeltaIterate(benchmark::State& state) {
    auto vars = JetVarSet::make({"x"}, (int)state.range(0) + 1, 2);
    auto one = DeltaPoly::constant(vars, 1);
    auto f = (DeltaPoly::variable(vars, 0, 0) + one).pow(2) - one;
    for (auto _ : state) {
        DeltaPoly g = f;
        for (int i = 0; i < state.range(0); ++i) g = delta(g);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_DeltaIterate)->Arg(2)->Arg(3);

static void BM_GroebnerMu3Jet(benchmark::State& state) {
    auto vars = JetVarSet::make({"x"}, 0, 3);
    auto one = DeltaPoly::constant(vars, 1);
    auto f = (DeltaPoly::variable(vars, 0, 0) + one).pow(3) - one;
    auto X = SchemePresentation::make(vars, {f}, "mu3");
    auto J = build_jet(X, 2);
    std::vector<GFpPoly> gens;
    for (const auto& g : J.flat_relations()) gens.push_back(to_gfp(g));
    for (auto _ : state) {
        auto gb = Groebner::compute(gens);
        benchmark::DoNotOptimize(gb);
    }
}
BENCHMARK(BM_GroebnerMu3Jet);

static void BM_WittMul(benchmark::State& state) {
    const long long p = 3;
    const int len = (int)state.range(0);
    WittUniversal::get(p, len); // cache outside the loop
    std::vector<Rat> u, v;
    for (int i = 0; i < len; ++i) {
        u.push_back(Rat(7 * i + 2));
        v.push_back(Rat(5 * i - 3));
    }
    for (auto _ : state) {
        auto w = witt_mul(p, u, v);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_WittMul)->Arg(2)->Arg(3)->Arg(4);

static void BM_EllipticCharacter(benchmark::State& state) {
    auto ctx = PadicCtx::make(7, 10);
    auto E = make_elliptic_curve(ctx, Int(-13392), Int(-1080432));
    for (auto _ : state) {
        auto psi = elliptic_delta_character(E, state.range(0));
        benchmark::DoNotOptimize(psi);
    }
}
BENCHMARK(BM_EllipticCharacter)->Arg(32)->Arg(56);

static void BM_GmCharacterEval(benchmark::State& state) {
    auto ch = gm_delta_character(5, 12);
    auto ctx = PadicCtx::make(5, 12);
    PadicElem a(ctx, 1234577);
    for (auto _ : state) {
        auto v = psi_star_gm(ch, a);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_GmCharacterEval);

BENCHMARK_MAIN();
