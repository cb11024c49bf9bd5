#include <benchmark/benchmark.h>

#include "effdiff/autoreduced.hpp"
#include "effdiff/catalogue.hpp"
#include "effdiff/membership.hpp"
#include "effdiff/multiset.hpp"
#include "effdiff/reduction.hpp"

using namespace effdiff;

static void BM_IterateOmegaSquared(benchmark::State& state) {
    MonotoneFn G = MonotoneFn::successor();
    Ordinal a = Ordinal::omega_pow(2);
    for (auto _ : state) {
        Budget b;
        benchmark::DoNotOptimize(iterate(G, a, Val(static_cast<unsigned long>(state.range(0))), b));
    }
}
BENCHMARK(BM_IterateOmegaSquared)->Arg(8)->Arg(64)->Arg(512);

static void BM_IterateNested(benchmark::State& state) {
    MonotoneFn D = MonotoneFn::parse("2*i");
    Ordinal a = Ordinal::parse("w^2*2 + w + 3");
    for (auto _ : state) {
        Budget b;
        b.max_bits = 1U << 14;
        b.max_steps = static_cast<std::uint64_t>(state.range(0));
        benchmark::DoNotOptimize(iterate(D, a, Val(3UL), b));
    }
}
BENCHMARK(BM_IterateNested)->Arg(256)->Arg(4096);

// Args: the single element of tau, then the step budget. {3} runs out of budget.
static void BM_MultisetRecursion(benchmark::State& state) {
    MonotoneFn D = MonotoneFn::parse("i+2");
    auto top = static_cast<unsigned long>(state.range(0));
    for (auto _ : state) {
        Budget b;
        b.max_steps = static_cast<std::uint64_t>(state.range(1));
        benchmark::DoNotOptimize(frak_m({top}, D, Val(0UL), b));
    }
}
BENCHMARK(BM_MultisetRecursion)->Args({2, 1 << 12})->Args({3, 1 << 12})->Args({3, 1 << 16});

static void BM_BoundedMembership(benchmark::State& state) {
    std::vector<Poly> gens{Poly::parse("x1^2 + x2*x3", 3), Poly::parse("x2^2 - x1", 3), Poly::parse("x3^3 + 1", 3)};
    Poly h = Poly::parse("x1*x3", 3) * gens[0] + Poly::parse("x2 + 1", 3) * gens[1] + Poly::parse("x1", 3) * gens[2];
    for (auto _ : state) benchmark::DoNotOptimize(membership_bounded(h, gens, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_BoundedMembership)->Arg(2)->Arg(3);

static void BM_Syzygies(benchmark::State& state) {
    std::vector<Poly> gens{Poly::parse("x1*x2 - 1", 2), Poly::parse("x1^2 + x2", 2), Poly::parse("x2^2", 2)};
    for (auto _ : state) benchmark::DoNotOptimize(syzygy_generators(gens, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Syzygies)->Arg(2)->Arg(4);

static void BM_Pseudodivision(benchmark::State& state) {
    DiffShape s{2, 2};
    DiffPolys set{DiffPoly::parse("x1*(d1 x1)^2 + x2", s), DiffPoly::parse("d2 x2^2 + x1*x2", s)};
    DiffPoly f = DiffPoly::parse("(d1^2 x1)^2*d2 x2 + d1 d2 x2*x1 + (d1 x1)^3", s);
    for (auto _ : state) benchmark::DoNotOptimize(pseudodivide(f, set));
}
BENCHMARK(BM_Pseudodivision);

static void BM_Autoreduce(benchmark::State& state) {
    DiffShape s{2, 1};
    DiffPolys in{DiffPoly::parse("d1 x1*x2 + x1", s), DiffPoly::parse("x1^2 - x2", s), DiffPoly::parse("d1 x2 - x1", s)};
    for (auto _ : state) benchmark::DoNotOptimize(autoreduce(in));
}
BENCHMARK(BM_Autoreduce);

BENCHMARK_MAIN();
