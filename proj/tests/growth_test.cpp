#include <doctest.h>

#include <set>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"
#include "effdiff/knit.hpp"
#include "effdiff/multiset.hpp"
#include "oracles.hpp"

using namespace effdiff;

namespace {

BigNat ipow(BigNat b, unsigned long e) {
    BigNat r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigNat binom(unsigned long n, unsigned long k) {
    BigNat r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Val exact(const Val& v) {
    REQUIRE(v.exact);
    return v;
}

}  // namespace

TEST_CASE("successor iteration matches the direct recursion") {
    std::mt19937_64 r(3);
    MonotoneFn succ = MonotoneFn::successor();
    int compared = 0;
    for (int s = 0; s < 2000; ++s) {
        auto alpha = oracle::random_small_ord(r, 2, 3);
        std::uint64_t b = r() % 6;
        auto want = oracle::successor_iterate(alpha, b, 200000);
        if (!want) continue;
        Budget bud;
        Val got = iterate(succ, alpha.to_ordinal(), Val(static_cast<unsigned long>(b)), bud);
        REQUIRE(got.exact);
        REQUIRE(got.v == *want);
        ++compared;
    }
    CHECK(compared > 1000);
}

TEST_CASE("fast-growing benchmark closed forms") {
    MonotoneFn succ = MonotoneFn::successor();
    for (unsigned long b = 1; b <= 8; ++b) {
        Budget bud;
        CHECK(exact(iterate(succ, Ordinal::omega(), Val(b), bud)).v == 2 * b + 1);
        Val w2 = exact(iterate(succ, Ordinal::omega_pow(2), Val(b), bud));
        CHECK(w2.v >= ipow(2, b) * b);
        CHECK(w2.v == ipow(2, b) * (b + 2) - 1);
    }
}

TEST_CASE("iteration reports a residue past the budget") {
    Budget bud;
    bud.max_bits = 64;
    Val v = iterate(MonotoneFn::successor(), Ordinal::omega_pow(3), Val(8UL), bud);
    CHECK_FALSE(v.exact);
    CHECK(v.v > 0);
}

TEST_CASE("multiset recursion") {
    MonotoneFn D = MonotoneFn::parse("i+2");
    Budget bud;
    CHECK(exact(frak_m({2}, D, Val(0UL), bud)).v == 10);
    MonotoneFn four = MonotoneFn::parse("4");
    CHECK(multiset_step({1}, 1, 0, four, bud) == Multiset{0, 0, 0});
    CHECK_THROWS_AS(multiset_step({1}, 2, 0, four, bud), DomainError);
    CHECK(multi_compare(Multiset{0, 0, 0}, Multiset{1}) == Cmp::less);
    CHECK(multi_compare(Multiset{2}, Multiset{1, 1, 1}) == Cmp::greater);
}

TEST_CASE("multiset recursion matches the element-by-element unroll") {
    const char* bodies[] = {"i+2", "2*i", "i+1", "3"};
    std::size_t compared = 0;
    for (const char* body : bodies) {
        MonotoneFn D = MonotoneFn::parse(body);
        Budget probe;
        auto Dn = [&](std::uint64_t i) { return D(Val(static_cast<unsigned long>(i)), probe).v.get_ui(); };
        for (std::uint64_t a = 0; a <= 3; ++a)
            for (std::uint64_t b = 0; b <= a; ++b)
                for (std::uint64_t i = 1; i <= 3; ++i) {
                    std::vector<std::uint64_t> tau{a, b};
                    auto want = oracle::unroll_m(tau, Dn, i, 200000);
                    if (!want) continue;
                    Budget bud;
                    Val got = frak_m({a, b}, D, Val(i), bud);
                    REQUIRE(got.exact);
                    REQUIRE(got.v == *want);
                    ++compared;
                }
    }
    CHECK(compared > 60);
}

TEST_CASE("m star is m of the singleton under D+1, plus one") {
    MonotoneFn D = MonotoneFn::parse("i+2");
    Budget probe;
    for (unsigned long n = 0; n <= 2; ++n) {
        auto want = oracle::unroll_m({n}, [](std::uint64_t i) { return i + 3; }, 0, 1000000);
        REQUIRE(want);
        Budget bud;
        CHECK(exact(frak_m_star(D, Val(n), bud)).v == *want + 1);
    }
}

TEST_CASE("catalogue closed forms") {
    Budget bud;
    CHECK(exact(frak_g(2, 3, bud)).v == 81);
    for (unsigned long n = 1; n <= 3; ++n)
        for (unsigned long b = 1; b <= 3; ++b) {
            CHECK(exact(frak_d(n, b, bud)).v == ipow(2 * b, 1UL << n));
            CHECK(exact(zeta0(n, b, bud)).v == binom(n + ipow(2 * b, 1UL << n).get_ui(), n));
            BigNat dprev = ipow(2 * b, 1UL << (n - 1));
            BigNat expo = ipow(b + dprev, n - 1) + 1;
            if (expo > 100000) CHECK_FALSE(frak_e(n, b, bud).exact);
            else CHECK(exact(frak_e(n, b, bud)).v == ipow(2, expo.get_ui()) * b + b + dprev);
        }
    for (unsigned long b = 0; b <= 4; ++b)
        for (unsigned long d = 0; d <= 4; ++d) CHECK(exact(frak_g(b, d, bud)).v == d * ipow(1 + b, d));
}

TEST_CASE("catalogue names, kinds and serialization") {
    std::vector<std::string> want{"d_n", "e",  "zeta0",  "zeta1", "zeta2",   "p_n",    "g",      "m",
                                  "m_star", "u_F", "u_plus_F", "f_F",  "h",   "D_sat",  "i_sat",  "D_cohere",
                                  "i_cohere", "z_k", "F_char", "D_char", "i_char", "k", "j"};
    std::set<std::string> have(catalogue_names().begin(), catalogue_names().end());
    for (const auto& n : want) CHECK_MESSAGE(have.count(n) == 1, n);
    CHECK(catalogue_kinds("g") == "NN");
    CHECK(catalogue_kinds("m") == "FNN*");
    CHECK_THROWS_AS(catalogue_kinds("nope"), DomainError);
    CHECK_THROWS_AS(catalogue("g", {BoundExpr::constant(1)}), DomainError);

    BoundExpr e = catalogue("g", {BoundExpr::constant(2), BoundExpr::constant(3)});
    CHECK(e.sexpr() == "(g 2 3)");
    CHECK(BoundExpr::parse_sexpr(e.sexpr()).sexpr() == e.sexpr());
    EvalOutcome out = evaluate(e, {}, Budget{});
    CHECK(out.exact);
    CHECK(out.value == 81);
    auto unfolded = unfold(catalogue("p_n", {BoundExpr::constant(2), BoundExpr::constant(2)}));
    REQUIRE(unfolded);
    CHECK(unfolded->sexpr() == unfold(catalogue("p_n", {BoundExpr::constant(2), BoundExpr::constant(2)}))->sexpr());
}

TEST_CASE("infix functions") {
    Budget bud;
    MonotoneFn f = MonotoneFn::parse("2*i + 3");
    CHECK(exact(f(Val(5UL), bud)).v == 13);
    CHECK(BoundExpr::parse_infix("i^2 + 1").sexpr() == "(+ (^ i 2) 1)");
    CHECK_THROWS_AS(MonotoneFn::parse("2*"), DomainError);
}

TEST_CASE("knit agrees with an exhaustive scan") {
    std::mt19937_64 r(17);
    for (int s = 0; s < 100; ++s) {
        // Each predicate is true outside a random finite set of naturals.
        std::vector<std::set<std::uint64_t>> holes(1 + r() % 3);
        for (auto& h : holes)
            for (int t = 0; t < 4; ++t) h.insert(r() % 40);
        std::vector<Searcher> ss;
        for (const auto& h : holes) ss.push_back(scan_searcher([h](const BigNat& x) { return h.count(x.get_ui()) == 0; }));
        bool doubling = r() % 2;
        MonotoneFn F = MonotoneFn::parse(doubling ? "2*i" : "i+1");
        Budget bud;
        BigNat k = knit(ss, F, 1, bud);
        std::uint64_t lo = k.get_ui(), hi = doubling ? 2 * lo : lo + 1;
        for (std::uint64_t x = lo; x <= hi; ++x)
            for (const auto& h : holes) REQUIRE(h.count(x) == 0);
    }
}

TEST_CASE("dominance reports") {
    BoundExpr lhs = BoundExpr::parse_infix("n + 1"), rhs = BoundExpr::parse_infix("2*n + 1");
    std::vector<std::map<std::string, BigNat>> samples;
    for (unsigned long n = 0; n < 5; ++n) samples.push_back({{"n", BigNat(n)}});
    CHECK(dominates(lhs, rhs, samples).consistent());
    CHECK_FALSE(dominates(rhs, lhs, {{{"n", BigNat(3)}}}).consistent());
}
