#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "effdiff/ordinal.hpp"
#include "effdiff/ranking.hpp"

namespace effdiff {

using NatVec = std::vector<std::uint64_t>;

// True when no earlier entry is componentwise below a later one.
bool is_bad_dickson(const std::vector<NatVec>& seq);

// Ordinal of a bad sequence in N^dims, read off the residual set
// {x : no entry <= x}: each maximal coordinate flat of dimension j contributes
// omega^j. Supported for dims <= 3.
Ordinal bad_dickson_ordinal(const std::vector<NatVec>& seq, std::uint32_t dims);

// Strictly increasing in the ranking, no entry a derivative of an earlier one.
bool is_bad_leader(const std::vector<Derivative>& seq, const DiffShape& shape);

// Natural sum over indeterminates of the bad Dickson ordinals of their exponent vectors.
Ordinal bad_leader_ordinal(const std::vector<Derivative>& seq, const DiffShape& shape);

// Assignment on bad leader sequences that also increases with the ranking of the
// last entry among siblings. Root value omega^m * n. Supported for m <= 2.
Ordinal ranked_leader_ordinal(const std::vector<Derivative>& seq, const DiffShape& shape);

using RankSeq = std::vector<std::pair<Derivative, BigNat>>;

// sum_i omega^{o(u_1..u_i)} * b_i + omega^{o(u_1..u_r)} with o the ranked assignment.
Ordinal autoreduced_ordinal(const RankSeq& gamma, const DiffShape& shape);

// -1, 0, 1: lexicographic on (leader, degree) pairs; a proper extension ranks lower.
int rankseq_compare(const RankSeq& a, const RankSeq& b);

// o(tau) = sum_{0<i<=n} omega^{i-1} c_i + 2|tau| for a multiset given by counts c_i of value i.
Ordinal multiset_ordinal(const std::vector<std::pair<BigNat, BigNat>>& value_counts);

}  // namespace effdiff
