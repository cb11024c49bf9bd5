#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effdiff/bound_expr.hpp"
#include "effdiff/charset.hpp"
#include "effdiff/ideal_chains.hpp"

namespace effdiff {

struct AutoreducedChainWitness {
    // Gamma(Lambda_{index+1}) is not lower than Gamma(Lambda_index).
    std::uint64_t index = 0;
    std::vector<std::vector<Rank>> ranks;  // Gamma(Lambda_1) .. Gamma(Lambda_{index+1})
    EvalOutcome bound;                     // h(i -> D(i+1)), the bound for the stream counted from 0
    // index - 1 < bound was established (exactly, or against a certified lower bound).
    bool bound_checked = false;

    bool verify() const;
};

// Lambda_i must be autoreduced and inside K{X}_{<=D(i)}; DomainError otherwise.
AutoreducedChainWitness autoreduced_chain_witness(const Stream<DiffPolys>& stream, const MonotoneFn& D,
                                                  const DiffShape& shape, std::uint64_t scan_cap = 1U << 16,
                                                  Budget budget = {});

// n = m = 1: starts from the empty set and each step takes the highest-ranked single
// power Z_v^e inside K{X}_{<=D(i)} below the previous one; constant once Z_1 is reached.
Stream<DiffPolys> greedy_descending_stream(const MonotoneFn& D);

// Lambda_i = {theta(lambda) : lambda in base, order(theta) < i}.
Stream<DiffPolys> derivative_closure_stream(DiffPolys base);

// Decides h in {gens} for the i-th scan position; nullopt is "unknown".
using RittOracle = std::function<std::optional<bool>(const DiffPoly& h, std::uint64_t i, const DiffPolys& gens)>;

// Sufficient check: h pseudodivides to 0 by the autoreduced set of gens with a constant
// multiplier; otherwise unknown.
RittOracle pseudodivision_ritt_oracle();
// h^k in (gens_[k]) for k <= max_power, by bounded linear algebra; otherwise unknown.
RittOracle power_ritt_oracle(std::uint64_t max_power, std::uint64_t degree_cap = 4, SearchLimits limits = {2000});
// Explicit entries (i, h, member); anything unlisted is unknown.
struct RittTableEntry {
    std::uint64_t i = 0;
    DiffPoly h;
    bool member = false;
};
RittOracle table_ritt_oracle(const std::vector<RittTableEntry>& entries);

struct RittCall {
    std::uint64_t i = 0;
    DiffPoly h;
    std::optional<bool> answer;
};

struct RittChainWitness {
    // Lambda_{F(index)} is inside {Lambda + Lambda_index}.
    std::uint64_t index = 0;
    std::vector<RittCall> calls;
    BoundExpr bound;  // j(n, m, i0, d, F)
    EvalOutcome bound_value;
    bool bound_checked = false;

    // Re-asks `oracle` every query made at the returned index.
    bool verify(const Stream<DiffPolys>& stream, const DiffPolys& base, const RittOracle& oracle) const;
    std::string transcript(const IndetNames& names = {}) const;
};

// Scans i = i0, i0+1, ... for the first i with every element of Lambda_{F(i)} in
// {base + Lambda_i}. Aborted on an unknown answer or at the scan cap.
RittChainWitness ritt_chain_witness(const DiffPolys& base, const Stream<DiffPolys>& stream, const MonotoneFn& D,
                                    const MonotoneFn& F, std::uint64_t i0, const RittOracle& oracle,
                                    std::uint64_t scan_cap = 256, Budget budget = {});

}  // namespace effdiff
