#include <doctest.h>

#include <tuple>

#include "effdiff/autoreduced.hpp"
#include "effdiff/charset.hpp"
#include "effdiff/errors.hpp"
#include "effdiff/reduction.hpp"
#include "oracles.hpp"
#include "suites.hpp"

using namespace effdiff;

namespace {

const DiffShape s11{1, 1};
const DiffShape s22{2, 2};

DiffPoly Q(const char* t, DiffShape s = s11) { return DiffPoly::parse(t, s); }

// Every derivative of order <= k, by brute force over exponent vectors.
std::vector<Derivative> all_derivatives(const DiffShape& s, std::uint32_t k) {
    std::vector<Derivative> out;
    std::vector<std::uint32_t> e(s.m, 0);
    std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t pos, std::uint32_t left) {
        if (pos == s.m) {
            for (std::uint32_t x = 1; x <= s.n; ++x) out.push_back({x, e});
            return;
        }
        for (std::uint32_t v = 0; v <= left; ++v) {
            e[pos] = v;
            rec(pos + 1, left - v);
        }
        e[pos] = 0;
    };
    rec(0, k);
    return out;
}

// Orderly ranking written out: order, then exponent vector lexicographically, then indeterminate.
auto orderly_key(const Derivative& u) { return std::tuple(u.order(), u.exps, u.indet); }

bool is_proper_derivative(const Derivative& a, const Derivative& base) {
    if (a.indet != base.indet || a == base) return false;
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] < base.exps[i]) return false;
    return true;
}

// Reducedness written from the definition: no proper derivative of the leader of g
// occurs in f, and f has lower degree than g in that leader.
bool reduced_by_definition(const DiffPoly& f, const DiffPoly& g) {
    if (g.is_constant()) return false;
    Derivative lead = g.leader();
    for (auto idx : f.indices())
        if (is_proper_derivative(derivative_at(idx, f.shape()), lead)) return false;
    return f.degree_in(lead) < g.leader_degree();
}

}  // namespace

TEST_CASE("orderly ranking enumeration") {
    for (DiffShape s : {DiffShape{1, 1}, DiffShape{2, 1}, DiffShape{1, 2}, DiffShape{2, 2}}) {
        auto ds = all_derivatives(s, 3);
        for (const auto& a : ds) {
            REQUIRE(derivative_at(rank_index(a, s), s) == a);
            for (const auto& b : ds) {
                int want = orderly_key(a) < orderly_key(b) ? -1 : orderly_key(b) < orderly_key(a) ? 1 : 0;
                REQUIRE(rank_compare(a, b) == want);
                REQUIRE((rank_index(a, s) < rank_index(b, s)) == (want < 0));
            }
        }
    }
    DiffShape s12{1, 2};
    CHECK(rank_index(parse_derivative("d2 x1", s12), s12) == 2);
    CHECK(rank_index(parse_derivative("d1 x1", s12), s12) == 3);
}

TEST_CASE("derivations") {
    std::mt19937_64 r(4);
    DiffPoly f = Q("x1^2*d1 x1 + x1", s22), g = Q("d2 x2*x1 - 3", s22);
    for (std::uint32_t i = 1; i <= 2; ++i) CHECK((f * g).derive(i) == f.derive(i) * g + f * g.derive(i));
    CHECK(f.derive(1).derive(2) == f.derive(2).derive(1));
    CHECK(f.apply({1, 1}) == f.derive(1).derive(2));
    CHECK(Q("d1 x1^2").derive(1) == Q("2*d1 x1*d1^2 x1"));
}

TEST_CASE("leaders, initials and separants") {
    DiffPoly g = Q("x1*(d1 x1)^2 + d1 x1 + x1^3");
    CHECK(g.leader() == Derivative{1, {1}});
    CHECK(g.leader_degree() == 2);
    CHECK(g.initial() == Q("x1"));
    CHECK(g.separant() == Q("2*x1*d1 x1 + 1"));
    CHECK(g.separant() == g.partial(g.leader_index()));
}

TEST_CASE("reducedness agrees with the definition") {
    auto c = suites::random_pseudodivision(5, 20);
    CHECK_MESSAGE(c.pass, c.detail);
    std::vector<std::string> polys{"x1", "d1 x1", "x1^2 + 1", "(d1 x1)^2 + x1", "d1^2 x1*x1", "x1*d1 x1 + 2", "3"};
    for (const auto& a : polys)
        for (const auto& b : polys) {
            if (b == "3") continue;
            CHECK_MESSAGE(reduced(Q(a.c_str()), Q(b.c_str())) == reduced_by_definition(Q(a.c_str()), Q(b.c_str())),
                          a << " by " << b);
        }
    CHECK_THROWS_AS(reduced(Q("x1"), Q("3")), DomainError);
}

TEST_CASE("pseudodivision certificates re-expand by hand") {
    DiffPolys set{Q("(d1 x1)^2 + x1")};
    DiffPoly f = Q("(d1^2 x1)^2 + x1*d1 x1");
    auto c = pseudodivide(f, set);
    DiffPoly expand = c.remainder;
    for (const auto& [gen, q] : c.cofactors) expand += q * set[gen.element].apply(gen.theta);
    DiffPoly mult = DiffPoly::constant(s11, 1);
    for (std::size_t k = 0; k < set.size(); ++k)
        mult *= set[k].initial().pow(c.exponents[k].first) * set[k].separant().pow(c.exponents[k].second);
    CHECK(mult * f == expand);
    CHECK(reduced_by_definition(c.remainder, set[0]));
    CHECK(c.max_exponent() <= pseudodiv_bound(f.size_bound(), f.size_bound()));
    CHECK_THROWS_AS(pseudodivide(f, {Q("x1"), Q("x1^2")}), DomainError);
}

TEST_CASE("one-step remainders of the worked example") {
    auto c = suites::pseudodivision_fixtures();
    CHECK_MESSAGE(c.pass, c.detail);
}

TEST_CASE("delta-s polynomials") {
    DiffPoly f = Q("d1 x1 - x1"), g = Q("d1 x1 + x1^2");
    DiffPoly d = delta_s_poly(f, g);
    CHECK(d == g.separant() * f - f.separant() * g);
}

TEST_CASE("autoreduce") {
    DiffPolys in{Q("d1 x1"), Q("x1*d1 x1 + x1")};
    auto res = autoreduce(in);
    REQUIRE_FALSE(res.unit);
    CHECK(is_autoreduced(res.set));
    for (std::size_t i = 0; i < res.set.size(); ++i)
        for (std::size_t j = 0; j < res.set.size(); ++j)
            if (i != j) CHECK(reduced_by_definition(res.set[i], res.set[j]));
    for (const auto& f : in) CHECK(pseudodivide(f, res.set).remainder.is_zero());
    for (std::size_t i = 1; i < res.history.size(); ++i) CHECK(compare_sets(res.history[i], res.history[i - 1]) < 0);
    CHECK(res.set.size() == 1);
    CHECK(res.set[0].leader() == Derivative{1, {0}});
}

TEST_CASE("autoreduce and coherent on random inputs") {
    auto c = suites::autoreduce_and_coherent(9, 10);
    CHECK_MESSAGE(c.pass, c.detail);
}

TEST_CASE("coherent sets") {
    DiffPolys apart{Q("x1^2 + 1", s22), Q("x2^2 + x1", s22)};
    auto res = coherent(apart, true);
    CHECK(is_reduction_coherent(res.set));
    CHECK_THROWS_AS(coherent({Q("x1"), Q("x1^2")}), DomainError);
}

TEST_CASE("stratified membership") {
    DiffPolys set{Q("d1 x1 - x1")};
    auto res = stratified_membership(Q("d1^2 x1 - x1"), set, 2, Stratum::order);
    CHECK(res.membership.found());
    CHECK(res.verify(set));
}

TEST_CASE("characteristic set fixtures") {
    auto c = suites::charset_fixtures(4096);
    CHECK_MESSAGE(c.pass, c.detail);
    DiffShape s21{2, 1};
    auto U = [&](const char* t) { return DiffPoly::parse(t, s21); };
    auto bad = table_oracle({{U("x1*x2"), true}, {U("x1"), false}, {U("x2"), false}, {U("x1^2"), false}, {U("x2^2"), false}});
    CHECK_THROWS_AS(char_set({U("x1*x2")}, bad), Aborted);
    auto unknown = table_oracle({});
    CHECK_THROWS_AS(char_set({U("x1*x2")}, unknown), Aborted);
}
