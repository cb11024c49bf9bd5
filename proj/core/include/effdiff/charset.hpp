#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effdiff/autoreduced.hpp"
#include "effdiff/bound_expr.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

// Membership oracle for a differential ideal P; nullopt means "unknown".
using DiffOracle = std::function<std::optional<bool>(const DiffPoly&)>;

// Ideal membership is scale invariant; tables are keyed on the monic form.
std::string oracle_key(const DiffPoly& f);

// Explicit (polynomial, member) table; unlisted queries answer nullopt.
DiffOracle table_oracle(const std::vector<std::pair<DiffPoly, bool>>& entries);
// f in P iff f pseudodivides to 0 by `set` (sound for a characteristic set of a prime P).
DiffOracle remainder_oracle(DiffPolys set);

struct OracleCall {
    DiffPoly query;
    std::optional<bool> answer;
    std::string purpose;
};

// Wraps an oracle: memoizes, records every call, and aborts on "unknown" or on two
// different answers to the same query.
class RecordingOracle {
public:
    explicit RecordingOracle(DiffOracle inner) : inner_(std::move(inner)) {}
    bool ask(const DiffPoly& f, const std::string& purpose);
    const std::vector<OracleCall>& calls() const { return calls_; }
    std::string transcript(const IndetNames& names = {}) const;
    // Table of every answered query, for replay.
    std::vector<std::pair<DiffPoly, bool>> table() const;

private:
    DiffOracle inner_;
    std::map<std::string, bool> memo_;
    std::vector<OracleCall> calls_;
};

struct CharSetOptions {
    // Cap on candidate pairs in the primality and reduced-element searches.
    std::size_t witness_pool_size = 4096;
    std::uint64_t max_rounds = 64;
    // Saturation powers and cofactor degrees tried when certifying a reduced element.
    std::uint64_t sat_power = 2;
    std::uint64_t sat_degree = 2;
    SearchLimits limits{2000};
};

struct CharSetStep {
    int repair = 0;  // 1 coherence, 2 saturation, 3 initial/separant in P, 4 primality, 5 reduced element
    DiffPolys added;
    DiffPolys set;   // set after the step
};

struct CharSetResult {
    DiffPolys sigma;
    DiffPolys start;
    std::vector<CharSetStep> steps;
    std::vector<OracleCall> calls;
    std::vector<PseudoDivCert> input_certificates;
    BoundExpr bound;     // i_char(b, n, m)
    EvalOutcome bound_value;

    // Replays: autoreduced, reduction-coherent, inputs reduce to 0, Sigma in P and no
    // initial or separant of Sigma in P, all per `oracle`.
    bool verify(const DiffPolys& input, const DiffOracle& oracle) const;
};

// Executes the five-repair loop. Aborted (with transcript) on unknown or inconsistent
// oracle answers, an oversized witness pool, or the round cap.
CharSetResult char_set(const DiffPolys& input, const DiffOracle& oracle, const CharSetOptions& opt = {});

}  // namespace effdiff
