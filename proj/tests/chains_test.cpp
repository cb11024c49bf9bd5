#include <doctest.h>

#include <map>

#include "effdiff/catalogue.hpp"
#include "effdiff/chains.hpp"
#include "effdiff/errors.hpp"
#include "suites.hpp"

using namespace effdiff;

namespace {

const DiffShape s11{1, 1};
DiffPoly P(const char* t) { return DiffPoly::parse(t, s11); }

// Longest strictly descending run of autoreduced-set ranks in one indeterminate and one
// derivation, where the set at position i has leader index and degree at most D(i).
// There a nonempty autoreduced set is a single element, so a rank is (leader, degree)
// and the empty set ranks above all of them.
struct LongestChain {
    std::uint64_t (*D)(std::uint64_t);
    std::map<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>, std::uint64_t> memo;

    // Sets from position i on, given Lambda_i has rank (l, d).
    std::uint64_t from(std::uint64_t i, std::uint64_t l, std::uint64_t d) {
        auto key = std::tuple(i, l, d);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t cap = D(i + 1), best = 0;
        for (std::uint64_t l2 = 1; l2 <= std::min(l, cap); ++l2)
            for (std::uint64_t d2 = 1; d2 <= cap; ++d2)
                if (l2 < l || d2 < d) best = std::max(best, from(i + 1, l2, d2));
        return memo[key] = best + 1;
    }

    std::uint64_t from_empty() {
        std::uint64_t best = 0, cap = D(2);
        for (std::uint64_t l = 1; l <= cap; ++l)
            for (std::uint64_t d = 1; d <= cap; ++d) best = std::max(best, from(2, l, d));
        return best + 1;
    }
};

}  // namespace

TEST_CASE("autoreduced chain fixtures") {
    MonotoneFn D = MonotoneFn::parse("i+2");
    auto constant = autoreduced_chain_witness(stream_of<DiffPolys>({{P("x1^2")}}, true), D, s11);
    CHECK(constant.index == 1);
    CHECK(constant.verify());
    auto steps = autoreduced_chain_witness(stream_of<DiffPolys>({{P("x1^3")}, {P("x1^2")}, {P("x1")}, {P("x1")}}), D, s11);
    CHECK(steps.index == 3);
    CHECK(steps.verify());
    CHECK_THROWS_AS(autoreduced_chain_witness(stream_of<DiffPolys>({{P("x1^9")}}), D, s11), DomainError);
}

TEST_CASE("greedy stream is as long as any descending chain") {
    MonotoneFn D = MonotoneFn::parse("i+1");
    LongestChain oracle{[](std::uint64_t i) { return i + 1; }, {}};
    std::uint64_t longest = oracle.from_empty();
    auto w = autoreduced_chain_witness(greedy_descending_stream(D), D, s11);
    CHECK(w.verify());
    CHECK(w.index == longest);
    REQUIRE(w.bound.exact);
    CHECK(BigNat(static_cast<unsigned long>(w.index - 1)) < w.bound.value);
    CHECK(w.bound_checked);
}

TEST_CASE("random autoreduced chains") {
    auto c = suites::run_suite("chains", suites::SuiteConfig{});
    for (const auto& check : c.checks) CHECK_MESSAGE(check.pass, check.name << ": " << check.detail);
}

TEST_CASE("ritt chains") {
    MonotoneFn D = MonotoneFn::parse("i+2"), F = MonotoneFn::parse("i+1");
    DiffPolys base{P("x1")};
    auto closure = derivative_closure_stream(base);
    auto w = ritt_chain_witness(base, closure, D, F, 1, pseudodivision_ritt_oracle());
    CHECK(w.index == 1);
    CHECK(w.verify(closure, base, pseudodivision_ritt_oracle()));
    CHECK(w.bound.sexpr() == "(j 1 1 1 1 (fn i (+ i 1)))");
    CHECK_FALSE(w.bound_checked);
    CHECK_FALSE(w.transcript().empty());

    auto stream = stream_of<DiffPolys>({{P("x1")}}, true);
    std::vector<RittTableEntry> entries;
    for (std::uint64_t i = 1; i <= 3; ++i) entries.push_back({i, P("x1"), i == 3});
    auto tab = table_ritt_oracle(entries);
    auto t3 = ritt_chain_witness({P("d1 x1")}, stream, D, F, 1, tab);
    CHECK(t3.index == 3);
    CHECK(t3.verify(stream, {P("d1 x1")}, tab));
    // A replay against a different oracle is rejected.
    CHECK_FALSE(t3.verify(stream, {P("d1 x1")}, table_ritt_oracle({{1, P("x1"), true}})));
    CHECK_THROWS_AS(ritt_chain_witness({P("d1 x1")}, stream, D, F, 1, table_ritt_oracle({})), Aborted);
}

TEST_CASE("power oracle") {
    MonotoneFn D = MonotoneFn::parse("i+2"), F = MonotoneFn::parse("i+1");
    DiffPolys base{P("x1^2")};
    auto stream = stream_of<DiffPolys>({{P("x1")}}, true);
    auto oracle = power_ritt_oracle(3);
    auto w = ritt_chain_witness(base, stream, D, F, 1, oracle);
    CHECK(w.verify(stream, base, oracle));
}
