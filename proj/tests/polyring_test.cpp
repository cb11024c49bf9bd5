#include <doctest.h>

#include "effdiff/errors.hpp"
#include "effdiff/ideal_chains.hpp"
#include "effdiff/membership.hpp"
#include "effdiff/radical.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace effdiff;

namespace {

Poly P2(const char* t) { return Poly::parse(t, 2); }

Poly random_poly(std::mt19937_64& r, std::size_t n, std::uint64_t deg) {
    Poly p(n);
    auto monos = monomials_up_to(n, deg);
    for (int t = 0; t < 3; ++t) p.add_term(monos[r() % monos.size()], Rational(static_cast<long>(r() % 7) - 3));
    return p;
}

std::vector<Rational> random_point(std::mt19937_64& r, std::size_t n) {
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < n; ++i) {
        pt.emplace_back(static_cast<long>(r() % 11) - 5, 1 + r() % 3);
        pt.back().canonicalize();
    }
    return pt;
}

// First pair i < j with v_i <= v_j, 1-based, by scanning all pairs.
std::optional<std::pair<std::uint64_t, std::uint64_t>> first_dickson_pair(const std::vector<NatVec>& v) {
    for (std::size_t j = 1; j < v.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) {
            bool le = true;
            for (std::size_t s = 0; s < v[i].size(); ++s) le = le && v[i][s] <= v[j][s];
            if (le) return std::pair{i + 1, j + 1};
        }
    return std::nullopt;
}

}  // namespace

TEST_CASE("printing and parsing") {
    Poly p = P2("3*x1^2*x2 - x2 + 1/2");
    CHECK(Poly::parse(p.str(), 2) == p);
    CHECK(P2("(x1 + x2)^2") == P2("x1^2 + 2*x1*x2 + x2^2"));
    CHECK(P2("0").is_zero());
    CHECK(P2("2/4*x1") == P2("1/2*x1"));
    CHECK(p.total_degree() == 3);
    CHECK(p.degree_in(1) == 1);
    CHECK_THROWS_AS(Poly::parse("x3", 2), DomainError);
    CHECK_THROWS_AS(Poly::parse("x1 +", 2), DomainError);
}

TEST_CASE("arithmetic agrees with evaluation") {
    std::mt19937_64 r(2);
    for (int s = 0; s < 300; ++s) {
        Poly a = random_poly(r, 3, 3), b = random_poly(r, 3, 3);
        auto pt = random_point(r, 3);
        REQUIRE((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        REQUIRE((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
        REQUIRE((a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt));
        REQUIRE(a.pow(3).evaluate(pt) == a.evaluate(pt) * a.evaluate(pt) * a.evaluate(pt));
        Poly sub = a.substitute(0, b);
        auto pt2 = pt;
        pt2[0] = b.evaluate(pt);
        REQUIRE(sub.evaluate(pt) == a.evaluate(pt2));
        REQUIRE(Poly::parse(a.str(), 3) == a);
    }
}

TEST_CASE("bounded membership") {
    auto res = membership_bounded(P2("x1^2 + x2"), {P2("x1^2 + x2"), P2("x1*x2 - 1")}, 2);
    REQUIRE(res.found());
    CHECK(res.cert.verify(P2("x1^2 + x2"), {P2("x1^2 + x2"), P2("x1*x2 - 1")}));

    auto not_member = membership_bounded(P2("x1"), {P2("x1^2")}, 4);
    CHECK(not_member.status == MemberStatus::not_found);

    // x*y - 1 and x: 1 = x*y - (x*y - 1) needs a degree-1 cofactor.
    auto unit = membership_bounded(P2("1"), {P2("x1*x2 - 1"), P2("x1")}, 1);
    REQUIRE(unit.found());
    CHECK(unit.cert.verify(P2("1"), {P2("x1*x2 - 1"), P2("x1")}));
    CHECK(membership_bounded(P2("1"), {P2("x1*x2 - 1"), P2("x1")}, 0).status == MemberStatus::not_found);
}

TEST_CASE("planted membership is recovered") {
    auto c = suites::planted_membership(19, 40);
    CHECK_MESSAGE(c.pass, c.detail);
}

TEST_CASE("syzygies") {
    std::vector<Poly> gens{P2("x1"), P2("x2")};
    auto syz = syzygy_generators(gens, 2);
    REQUIRE_FALSE(syz.empty());
    for (const auto& v : syz) CHECK((gens[0] * v[0] + gens[1] * v[1]).is_zero());
    CHECK(module_member({P2("x2"), P2("-x1")}, syz, 2).has_value());
    CHECK_FALSE(module_member({P2("1"), P2("0")}, syz, 2).has_value());
    auto c = suites::planted_syzygies(23, 20);
    CHECK_MESSAGE(c.pass, c.detail);
}

TEST_CASE("dickson witness agrees with the pair scan") {
    std::mt19937_64 r(8);
    MonotoneFn D = MonotoneFn::parse("i+2");
    for (int s = 0; s < 300; ++s) {
        std::uint32_t n = 1 + r() % 2;
        std::vector<NatVec> seq;
        for (std::uint64_t i = 1; i <= 40; ++i) {
            NatVec v(n);
            for (auto& x : v) x = r() % (i + 3);
            seq.push_back(v);
        }
        auto want = first_dickson_pair(seq);
        if (!want) continue;
        auto w = dickson_witness(stream_of(seq), D, n);
        REQUIRE(w.i == want->first);
        REQUIRE(w.j == want->second);
    }
    auto w = dickson_witness(stream_of<NatVec>({{2, 0}, {1, 1}, {0, 2}, {0, 1}, {1, 0}, {0, 0}, {5, 5}}), D, 2);
    CHECK(w.i == 1);
    CHECK(w.j == 7);
    CHECK_THROWS_AS(dickson_witness(stream_of<NatVec>({{9, 0}, {9, 9}}), D, 2), DomainError);
}

TEST_CASE("hilbert chain witnesses on staircases") {
    MonotoneFn D = MonotoneFn::parse("i+6");
    for (std::uint32_t L = 1; L <= 6; ++L) {
        auto w = hilbert_chain_witness(staircase_chain(L), D, 2);
        CHECK(w.j == L);
        CHECK(w.verify());
        CHECK(w.upper == w.lower);
    }
}

TEST_CASE("radical representations and power certificates") {
    std::vector<Poly> lambda{P2("x1^2"), P2("x2^2")};
    FactorOracle oracle = [&](const std::vector<Poly>& gens) -> std::optional<FactorSplit> {
        for (const char* c : {"x1", "x2"})
            if (!membership_bounded(P2(c), gens, 4).found()) return FactorSplit{P2(c), P2(c)};
        return std::nullopt;
    };
    auto rep = radical_tree(lambda, P2("x1 + x2"), 3, oracle);
    CHECK(rep.verify(P2("x1 + x2"), lambda));
    auto found = find_power({P2("x1^2 + x2"), P2("x2^2")}, P2("x1"), 6, 6);
    REQUIRE(found);
    CHECK(found->first == 4);
    CHECK(prime_up_to_check({P2("x1*x2")}, 1, {{P2("x1"), P2("x2")}}).size() == 1);
}
