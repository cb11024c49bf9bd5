#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effdiff/poly.hpp"
#include "effdiff/ranking.hpp"

namespace effdiff {

// Display names for X_1..X_n; empty means x1..xn.
using IndetNames = std::vector<std::string>;

std::string derivative_name(const Derivative& u, const IndetNames& names = {});

// (leader rank index, degree of the leader); compared lexicographically.
struct Rank {
    std::uint64_t leader = 0;
    std::uint32_t degree = 0;
    friend auto operator<=>(const Rank&, const Rank&) = default;
};

// Differential polynomial: a Poly whose variable v stands for the derivative with
// rank index v + 1. The variable count is kept trimmed to the largest index used.
class DiffPoly {
public:
    DiffPoly() = default;
    explicit DiffPoly(DiffShape shape) : shape_(shape) {}
    DiffPoly(DiffShape shape, Poly p);

    static DiffPoly constant(DiffShape shape, const Rational& c);
    static DiffPoly of(DiffShape shape, const Derivative& u, std::uint32_t power = 1);
    static DiffPoly of_index(DiffShape shape, std::uint64_t index, std::uint32_t power = 1);

    const DiffShape& shape() const { return shape_; }
    const Poly& poly() const { return p_; }
    // The same polynomial with exactly nvars variables (nvars >= max_index()).
    Poly poly_in(std::size_t nvars) const { return p_.extend(nvars); }

    bool is_zero() const { return p_.is_zero(); }
    bool is_constant() const { return p_.is_constant(); }
    std::uint64_t total_degree() const { return p_.total_degree(); }
    // Largest rank index present; 0 for constants.
    std::uint64_t max_index() const;
    // Rank indices present, ascending.
    std::vector<std::uint64_t> indices() const;
    // In K{X}_{<=b,d}: indices <= b and degree <= d.
    bool within(std::uint64_t b, std::uint64_t d) const { return max_index() <= b && total_degree() <= d; }
    bool within(std::uint64_t b) const { return within(b, b); }
    // Smallest b with this polynomial in K{X}_{<=b}.
    std::uint64_t size_bound() const { return std::max<std::uint64_t>(max_index(), total_degree()); }

    std::uint32_t degree_in(std::uint64_t index) const;
    std::uint32_t degree_in(const Derivative& u) const { return degree_in(rank_index(u, shape_)); }
    DiffPoly coeff_in(std::uint64_t index, std::uint32_t k) const;
    DiffPoly partial(std::uint64_t index) const;

    // DomainError on constants.
    std::uint64_t leader_index() const;
    Derivative leader() const { return derivative_at(leader_index(), shape_); }
    std::uint32_t leader_degree() const { return degree_in(leader_index()); }
    Rank rank() const { return {leader_index(), leader_degree()}; }
    DiffPoly initial() const;
    DiffPoly separant() const;

    // delta_i f, i in 1..m.
    DiffPoly derive(std::uint32_t i) const;
    // theta f for theta = prod delta_i^{theta[i-1]}.
    DiffPoly apply(const std::vector<std::uint32_t>& theta) const;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(DiffPoly a, const DiffPoly& b) { return a *= b; }
    DiffPoly operator-() const { return {shape_, -p_}; }
    DiffPoly scale(const Rational& c) const { return {shape_, p_.scale(c)}; }
    DiffPoly pow(std::uint64_t e) const { return {shape_, p_.pow(e)}; }

    // Terms by descending powers of the highest-ranked derivatives first; factors
    // within a term in ascending rank.
    std::string str(const IndetNames& names = {}) const;
    // Terms like "2/3 * (d1 x1)^2 * x2 - d2 x1"; indeterminates are x1..xn or `names`.
    static DiffPoly parse(std::string_view text, DiffShape shape, const IndetNames& names = {});

    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.shape_ == b.shape_ && a.p_ == b.p_; }

private:
    DiffShape shape_;
    Poly p_{0};

    void trim();
    void check(const DiffPoly& o) const;
};

// Least derivation monomial taking `from` to `to`; DomainError unless `to` derives `from`.
std::vector<std::uint32_t> derivation_between(const Derivative& from, const Derivative& to);

// Term printer shared with the pseudodivision step display.
std::string monomial_str(const Monomial& m, const IndetNames& names, const DiffShape& shape);

}  // namespace effdiff
