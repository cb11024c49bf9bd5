#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "effdiff/bound_expr.hpp"

namespace effdiff {

// Given (F, d), returns k >= d with phi holding on [k, F(k)]. The predicate, when
// present, is used to check the searcher's answer.
struct Searcher {
    std::function<BigNat(const MonotoneFn& F, const BigNat& d, Budget& bud)> search;
    std::function<bool(const BigNat&)> phi;
};

// Searcher that scans k = d, d+1, ... for the first window [k, F(k)] where phi holds.
Searcher scan_searcher(std::function<bool(const BigNat&)> phi, std::uint64_t max_scan = 1U << 20);

// Common witness k >= d: every searcher's predicate holds on [k, F(k)].
BigNat knit(const std::vector<Searcher>& searchers, const MonotoneFn& F, const BigNat& d, Budget& bud);

enum class Verdict { holds, fails, inconclusive };
const char* to_string(Verdict v);

struct DominanceSample {
    std::map<std::string, BigNat> assignment;
    EvalOutcome lhs, rhs;
    Verdict verdict = Verdict::inconclusive;
};

struct DominanceReport {
    std::vector<DominanceSample> samples;
    // True when no sample fails; inconclusive samples do not count against it.
    bool consistent() const;
    std::string str() const;
};

// Sampled check of lhs <= rhs. Never a proof.
DominanceReport dominates(const BoundExpr& lhs, const BoundExpr& rhs,
                          const std::vector<std::map<std::string, BigNat>>& samples, const EvalEnv& env = {},
                          Budget budget = {});

}  // namespace effdiff
