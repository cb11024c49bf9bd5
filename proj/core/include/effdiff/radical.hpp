#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "effdiff/membership.hpp"

namespace effdiff {

// g*h in the ideal with neither factor in it.
struct FactorSplit {
    Poly g, h;
};
using FactorOracle = std::function<std::optional<FactorSplit>(const std::vector<Poly>& gens)>;

// Oracle answering from a fixed list of (generators, split) entries, matched by equality.
FactorOracle table_oracle(std::vector<std::pair<std::vector<Poly>, FactorSplit>> table);

struct RadicalNode {
    std::vector<Poly> gens;
    std::optional<FactorSplit> split;  // absent on leaves
    std::optional<MembershipCert> f_cert;  // f in (gens), on leaves
    int child0 = -1, child1 = -1;
    unsigned depth = 0;
};

// f = sum coeffs[i] * r[i] with r[i]^(2^depth) in (Lambda).
struct RadicalRep {
    std::vector<RadicalNode> tree;
    unsigned depth = 0;
    std::vector<Poly> r, coeffs;
    std::vector<MembershipCert> power_certs;
    std::string transcript;

    bool verify(const Poly& f, const std::vector<Poly>& lambda) const;
};

struct RadicalOptions {
    std::uint64_t degree_bound = 8;  // cofactor degree for membership queries
    unsigned max_depth = 6;
    SearchLimits limits;
};

// Builds the splitting tree, combines the leaf representations through the
// solution module of the leaf systems, and certifies each r_i^(2^depth) in (Lambda).
// DomainError unless f^k is certified in (Lambda); Aborted with the partial tree
// when the oracle answers unknown.
RadicalRep radical_tree(const std::vector<Poly>& lambda, const Poly& f, std::uint64_t k, const FactorOracle& oracle,
                        const RadicalOptions& opt = {});

// Least k in [1, kmax] with f^k certified in (Lambda).
std::optional<std::pair<std::uint64_t, MembershipCert>> find_power(const std::vector<Poly>& lambda, const Poly& f,
                                                                   std::uint64_t kmax, std::uint64_t degree_bound,
                                                                   const SearchLimits& limits = {});

// f^E in (Lambda) from a certificate for f^k, k <= E: the cofactors times f^(E-k).
// The product is expanded only when E - k <= expand_limit; otherwise the
// certificate stays as (base, multiplier exponent).
struct PowerCert {
    std::uint64_t k = 0, E = 0;
    MembershipCert base;
    std::optional<MembershipCert> expanded;

    bool verify(const Poly& f, const std::vector<Poly>& lambda) const;
    std::string str() const;
};
PowerCert rabinowitsch_bound_check(const std::vector<Poly>& lambda, const Poly& f, std::uint64_t E,
                                   std::uint64_t k, const MembershipCert& base, std::uint64_t expand_limit = 16);

struct PrimeViolation {
    Poly f, g;
    // false when non-membership of f or g could not be settled
    bool certain = true;
};

// Pairs (f, g) from the pool with f*g in (Lambda) and f, g not in (Lambda).
std::vector<PrimeViolation> prime_up_to_check(const std::vector<Poly>& lambda, std::uint64_t b,
                                              const std::vector<std::pair<Poly, Poly>>& pool,
                                              const SearchLimits& limits = {});

}  // namespace effdiff
