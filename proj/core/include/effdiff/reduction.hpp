#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effdiff/diffpoly.hpp"

namespace effdiff {

using DiffPolys = std::vector<DiffPoly>;

// f has no proper derivative of the leader of g.
bool partially_reduced(const DiffPoly& f, const DiffPoly& g);
// ... and the leader of g appears in f to a lower power than in g.
bool reduced(const DiffPoly& f, const DiffPoly& g);
bool reduced(const DiffPoly& f, const DiffPolys& set);
bool partially_reduced(const DiffPoly& f, const DiffPolys& set);
bool is_autoreduced(const DiffPolys& set);

// Gamma(set) after sorting by rank ascending.
std::vector<Rank> rank_sequence(DiffPolys set);
// -1 when a has lower rank than b, 0 when equal, 1 otherwise.
int compare_sets(const std::vector<Rank>& a, const std::vector<Rank>& b);
int compare_sets(const DiffPolys& a, const DiffPolys& b);

// theta * element.
struct DerivedGen {
    std::size_t element = 0;
    std::vector<std::uint32_t> theta;
    friend auto operator<=>(const DerivedGen&, const DerivedGen&) = default;
};

// (prod I^k S^l) f - remainder = sum cofactor * theta(lambda).
struct PseudoDivCert {
    DiffPoly f;
    DiffPoly remainder;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> exponents;  // (k, l) per element
    std::map<DerivedGen, DiffPoly> cofactors;
    // (target rank index, degree before the step) per division step.
    std::vector<Rank> trace;

    DiffPoly multiplier(const DiffPolys& set) const;
    bool verify(const DiffPolys& set) const;
    std::uint64_t max_exponent() const;
    // Largest order offset of theta over the cofactors.
    std::uint64_t max_order() const;
};

// Eliminates the highest-ranking non-reduced derivative first; proper derivatives of
// leaders go through theta(lambda) and separants, leader powers through initials.
// DomainError when `set` is not autoreduced.
PseudoDivCert pseudodivide(const DiffPoly& f, const DiffPolys& set);
// Same, without the autoreducedness check (the set must still have no constants).
PseudoDivCert pseudodivide_unchecked(const DiffPoly& f, const DiffPolys& set);

// g(b, d) = d (1 + b)^d.
mpz_class pseudodiv_bound(std::uint64_t b, std::uint64_t d);

// One division step of f by g on the highest-ranking derivative of f that keeps f
// from being reduced with respect to g:
//   M f - q theta(g) = M rest + correction,
// where M is the separant (theta nontrivial) or the initial of g, and `rest` is f
// without its terms in the target.
struct DivisionStep {
    bool by_separant = false;
    Derivative target;
    std::vector<std::uint32_t> theta;
    DiffPoly multiplier, quotient, generator, rest, correction, result;

    // "S_g*(rest) - q*(...)*..." in the display names; `gname` names g.
    std::string str(const std::string& gname, const IndetNames& names = {}) const;
};
std::optional<DivisionStep> division_step(const DiffPoly& f, const DiffPoly& g);

// Delta(f, g, v) = S_g theta_g f - S_f theta_f g with theta_g mu_f = theta_f mu_g = v.
// v defaults to the least common derivative of the two leaders.
DiffPoly delta_s_poly(const DiffPoly& f, const DiffPoly& g, const std::optional<Derivative>& v = std::nullopt);

// Product of initials and separants of a set.
DiffPoly h_product(const DiffPolys& set);

}  // namespace effdiff
