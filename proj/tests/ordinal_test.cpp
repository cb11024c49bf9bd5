#include <doctest.h>
#include <functional>

#include "effdiff/errors.hpp"
#include "effdiff/ordinal.hpp"
#include "effdiff/rank_assign.hpp"
#include "oracles.hpp"

using namespace effdiff;
using oracle::SmallOrd;

TEST_CASE("cnf printing and parsing") {
    CHECK(Ordinal(0).str() == "0");
    CHECK(Ordinal(7).str() == "7");
    CHECK(Ordinal::omega().str() == "w");
    Ordinal a = Ordinal::parse("w^(w^2*3+1)*4 + w*2 + 7");
    CHECK(a.str() == "w^(w^2*3+1)*4 + w*2 + 7");
    CHECK(Ordinal::parse(a.str()) == a);
    CHECK(Ordinal::parse("w*2 + w") == Ordinal::parse("w*3"));
    CHECK(Ordinal::parse("3 + w") == Ordinal::omega());
    CHECK_THROWS_AS(Ordinal::parse("w^"), DomainError);
    CHECK_THROWS_AS(Ordinal::parse("x"), DomainError);
}

TEST_CASE("classification") {
    Ordinal w2 = Ordinal::omega_pow(2);
    CHECK(w2.is_limit());
    CHECK_FALSE(w2.is_successor());
    CHECK(Ordinal::parse("w + 1").is_successor());
    CHECK(Ordinal::parse("w + 1").predecessor() == Ordinal::omega());
    CHECK(Ordinal(5).is_finite());
    CHECK(Ordinal(5).finite_value() == 5);
    CHECK(Ordinal::parse("w^3*2 + w").max_exp() == Ordinal(3));
    CHECK(Ordinal::parse("w^3*2 + w").min_exp() == Ordinal(1));
}

TEST_CASE("fundamental sequences") {
    CHECK(Ordinal::omega().fundamental(4) == Ordinal(4));
    CHECK(Ordinal::omega_pow(2).fundamental(3) == Ordinal::parse("w*3"));
    CHECK(Ordinal::parse("w^w").fundamental(3) == Ordinal::parse("w^3*3"));
    CHECK(Ordinal::parse("w*2 + 5").fundamental(9) == Ordinal::parse("w*2 + 4"));
    CHECK(Ordinal::parse("w^2*2").fundamental(2) == Ordinal::parse("w^2 + w*2"));
}

TEST_CASE("arithmetic against coefficient vectors") {
    std::mt19937_64 r(11);
    for (int s = 0; s < 3000; ++s) {
        SmallOrd a = oracle::random_small_ord(r, 3, 4), b = oracle::random_small_ord(r, 3, 4);
        Ordinal A = a.to_ordinal(), B = b.to_ordinal();
        int c = cmp(a, b);
        Cmp expect = c < 0 ? Cmp::less : c > 0 ? Cmp::greater : Cmp::equal;
        REQUIRE(compare(A, B) == expect);
        REQUIRE((A < B) == (c < 0));
        REQUIRE(natural_sum(A, B) == natural_sum(a, b).to_ordinal());
        REQUIRE(natural_prod(A, B) == natural_prod(a, b).to_ordinal());
        REQUIRE(left_sum(A, B) == left_sum(a, b).to_ordinal());
        REQUIRE(Ordinal::parse(A.str()) == A);
        if (!a.zero()) {
            std::uint64_t x = r() % 6;
            REQUIRE(A.fundamental(x) == a.fundamental(x).to_ordinal());
            REQUIRE(A.fundamental(x) < A);
        }
    }
}

TEST_CASE("natural operations are commutative and monotone") {
    std::mt19937_64 r(5);
    for (int s = 0; s < 500; ++s) {
        Ordinal a = oracle::random_small_ord(r, 2, 3).to_ordinal();
        Ordinal b = oracle::random_small_ord(r, 2, 3).to_ordinal();
        Ordinal c = oracle::random_small_ord(r, 2, 3).to_ordinal();
        CHECK(natural_sum(a, b) == natural_sum(b, a));
        CHECK(natural_prod(a, b) == natural_prod(b, a));
        CHECK(natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c)));
        if (a < b) CHECK(natural_sum(a, c) < natural_sum(b, c));
    }
}

TEST_CASE("bad dickson ordinal decreases along bad sequences") {
    // Exhaustive over bad sequences of vectors in [0,2]^2 of length <= 4.
    std::vector<NatVec> pool;
    for (std::uint64_t x = 0; x <= 2; ++x)
        for (std::uint64_t y = 0; y <= 2; ++y) pool.push_back({x, y});
    std::size_t checked = 0;
    std::function<void(std::vector<NatVec>&)> extend = [&](std::vector<NatVec>& seq) {
        Ordinal here = bad_dickson_ordinal(seq, 2);
        if (seq.size() == 4) return;
        for (const auto& v : pool) {
            seq.push_back(v);
            if (is_bad_dickson(seq)) {
                REQUIRE(bad_dickson_ordinal(seq, 2) < here);
                ++checked;
                extend(seq);
            }
            seq.pop_back();
        }
    };
    std::vector<NatVec> empty;
    CHECK(bad_dickson_ordinal(empty, 2) == Ordinal::omega_pow(2));
    extend(empty);
    CHECK(checked > 100);
}

TEST_CASE("bad leader ordinal") {
    DiffShape s{1, 1};
    CHECK(bad_leader_ordinal({Derivative{1, {1}}}, s) == Ordinal(1));
    // Rising in rank, no entry a derivative of an earlier one.
    CHECK_FALSE(is_bad_leader({Derivative{1, {1}}, Derivative{1, {2}}}, s));
    CHECK_FALSE(is_bad_leader({Derivative{1, {2}}, Derivative{1, {1}}}, s));
    DiffShape s21{2, 1};
    CHECK(is_bad_leader({Derivative{2, {0}}, Derivative{1, {1}}}, s21));
    CHECK(bad_leader_ordinal({Derivative{2, {0}}, Derivative{1, {1}}}, s21) <
          bad_leader_ordinal({Derivative{2, {0}}}, s21));
}
