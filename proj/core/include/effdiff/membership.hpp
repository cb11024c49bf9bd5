#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effdiff/poly.hpp"

namespace effdiff {

using PolyVec = std::vector<Poly>;

// h = sum cofactors[i] * gens[i], each cofactor of degree <= degree_bound.
struct MembershipCert {
    std::map<std::size_t, Poly> cofactors;
    std::uint64_t degree_bound = 0;

    bool verify(const Poly& h, const std::vector<Poly>& gens) const;
    std::string str(const Poly::Namer& name = Poly::default_name) const;
};

// Builds a certificate and checks it; ContractViolation when it does not re-expand to h.
MembershipCert make_cert(const Poly& h, const std::vector<Poly>& gens, std::map<std::size_t, Poly> cofactors);

enum class MemberStatus {
    found,
    // No representation with cofactor degree <= the bound; with a proof of
    // non-membership when `reason` says so.
    not_found,
    // The search passed the size cap before reaching the bound.
    undetermined,
};
const char* to_string(MemberStatus s);

struct MembershipResult {
    MemberStatus status = MemberStatus::undetermined;
    MembershipCert cert;
    std::uint64_t searched_degree = 0;
    std::string reason;
    bool found() const { return status == MemberStatus::found; }
};

struct SearchLimits {
    // Largest linear system attempted, in unknowns.
    std::size_t max_unknowns = 6000;
};

// Searches cofactor degrees t = 0, 1, ..., D and stops at the first solvable level.
// NotFound is relative to D, except where `reason` records a proof for all degrees
// (a rational common zero of gens where h is nonzero, or a homogeneous system
// exhausted at deg h).
MembershipResult membership_bounded(const Poly& h, const std::vector<Poly>& gens, std::uint64_t D,
                                    const SearchLimits& limits = {});

// Generators (over the polynomial ring) of {y : M y = 0} for a matrix of polynomials
// (rows = equations), extracted degree by degree up to D. Complete for solutions of
// degree <= D.
std::vector<PolyVec> module_kernel(const std::vector<PolyVec>& M, std::uint64_t D, const SearchLimits& limits = {});

std::vector<PolyVec> syzygy_generators(const std::vector<Poly>& gens, std::uint64_t D,
                                       const SearchLimits& limits = {});

// Coefficients a_j of degree <= D with target = sum a_j gens[j], if any.
std::optional<std::vector<Poly>> module_member(const PolyVec& target, const std::vector<PolyVec>& gens,
                                               std::uint64_t D, const SearchLimits& limits = {});

std::uint64_t vec_degree(const PolyVec& v);

}  // namespace effdiff
