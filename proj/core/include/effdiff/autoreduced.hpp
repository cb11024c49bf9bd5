#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "effdiff/membership.hpp"
#include "effdiff/reduction.hpp"

namespace effdiff {

// Greedy minimal-rank autoreduced subset: scan by ascending rank (ties keep input
// order) and keep each element reduced with respect to everything kept so far.
// Constants are skipped.
DiffPolys min_rank_subset(const DiffPolys& set);

// Checks |set| <= C(2b, b) for the smallest b with set in K{X}_{<=b}; ContractViolation otherwise.
void check_cardinality(const DiffPolys& set);

struct AutoreduceResult {
    DiffPolys set;
    // Lambda_0, Lambda_1, ...; each strictly lower in rank than the one before.
    std::vector<DiffPolys> history;
    // Pseudodivision of each input against the output.
    std::vector<PseudoDivCert> certificates;
    // A nonzero constant remainder showed 1 in the differential ideal; `set` is then
    // the last set reached and the certificates are left empty.
    bool unit = false;
    // Degree caps D(i) from the bound recursion, where they fit in 64 bits.
    std::vector<std::optional<std::uint64_t>> degree_caps;
};

struct AutoreduceOptions {
    std::uint64_t max_rounds = 256;
};

// Repeatedly adds a nonzero remainder of some input and takes the minimal-rank subset.
AutoreduceResult autoreduce(const DiffPolys& input, const AutoreduceOptions& opt = {});

// All pairs of distinct elements sharing an indeterminate in their leaders, with the
// Delta-S-polynomial at the least common derivative.
struct SPair {
    std::size_t a = 0, b = 0;
    Derivative v;
    DiffPoly delta;
};
std::vector<SPair> s_pairs(const DiffPolys& set);
// Every Delta-S-polynomial pseudodivides to 0.
bool is_reduction_coherent(const DiffPolys& set);

struct CoherentResult {
    DiffPolys set;
    std::vector<DiffPolys> history;
    // Delta-S certificates for the output pairs, then (containment) one per input.
    std::vector<PseudoDivCert> pair_certificates;
    std::vector<PseudoDivCert> input_certificates;
    bool unit = false;
    std::vector<std::optional<std::uint64_t>> size_caps;
};

// `containment` also keeps going until every element of the input reduces to 0.
CoherentResult coherent(const DiffPolys& input, bool containment = false, const AutoreduceOptions& opt = {});

enum class Stratum {
    order,      // (Lambda_[k])
    saturated,  // Lambda^H_(k): H^k g in (Lambda)
    mixed,      // Lambda^H_[k]: H^k g in (Lambda_[k])
};
const char* to_string(Stratum s);

// theta(lambda) with rank_index(leader(theta lambda)) <= rank_index(leader(lambda)) + k.
std::vector<std::pair<DerivedGen, DiffPoly>> order_stratum(const DiffPolys& set, std::uint64_t k);

struct StratifiedResult {
    MembershipResult membership;
    std::vector<DerivedGen> generators;
    // The polynomial tested for ideal membership (H^k g for saturated strata).
    DiffPoly tested;
    // g lies in K{X}_{<=k}, as the saturated strata require.
    bool within_stratum = true;
    std::uint64_t degree_bound = 0;

    bool verify(const DiffPolys& set) const;
};

// Decides membership by linear algebra over the finitely many derivatives present,
// searching cofactor degrees up to `degree_cap`.
StratifiedResult stratified_membership(const DiffPoly& g, const DiffPolys& set, std::uint64_t k, Stratum which,
                                       std::uint64_t degree_cap = 6, const SearchLimits& limits = {});

}  // namespace effdiff
