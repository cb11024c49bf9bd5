#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "effdiff/bound_expr.hpp"
#include "effdiff/membership.hpp"
#include "effdiff/rank_assign.hpp"

namespace effdiff {

// 1-based indexable stream; nullopt marks its end.
template <class T>
using Stream = std::function<std::optional<T>(std::uint64_t)>;

template <class T>
Stream<T> stream_of(std::vector<T> items, bool repeat_last = false) {
    return [items = std::move(items), repeat_last](std::uint64_t i) -> std::optional<T> {
        if (i >= 1 && i <= items.size()) return items[i - 1];
        if (repeat_last && !items.empty() && i > items.size()) return items.back();
        return std::nullopt;
    };
}

struct DicksonWitness {
    std::uint64_t i = 0, j = 0;
    EvalOutcome bound;  // m*(D, n)
};

// First pair i < j (j ascending, then i) with stream[i] <= stream[j] componentwise.
// Requires |stream[i]|_inf <= D(i). Checks j <= m*(D, n) when that evaluates.
DicksonWitness dickson_witness(const Stream<NatVec>& stream, const MonotoneFn& D, std::uint32_t n,
                               std::uint64_t scan_cap = 1U << 16, Budget budget = {});

// Full reduction of f by the leading monomials of fs (grlex).
Poly reduce_by(const Poly& f, const std::vector<Poly>& fs);

struct HilbertWitness {
    // (Lambda_{j+1}) is contained in (Lambda_j).
    std::uint64_t j = 0;
    std::vector<Poly> reduced;                // f_1, f_2, ...
    std::vector<MembershipCert> certificates;  // one per element of Lambda_{j+1}, over Lambda_j
    std::vector<Poly> lower, upper;            // Lambda_j and Lambda_{j+1}
    std::vector<std::uint64_t> unchecked_ascents;  // indices i where Lambda_{i-1} in (Lambda_i) was undetermined
    EvalOutcome bound;                          // m*(D, n)

    bool verify() const;
};

HilbertWitness hilbert_chain_witness(const Stream<std::vector<Poly>>& stream, const MonotoneFn& D, std::uint32_t n,
                                     std::uint64_t scan_cap = 1U << 12, const SearchLimits& limits = {},
                                     Budget budget = {});

// Lambda_i = {x1^L, x1^{L-1} x2, ..., x1^{L-i+1} x2^{i-1}} for i <= L, then constant.
Stream<std::vector<Poly>> staircase_chain(std::uint32_t L);

}  // namespace effdiff
