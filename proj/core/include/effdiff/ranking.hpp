#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace effdiff {

// theta X_i: an indeterminate (1-based) with derivation exponents (delta_1..delta_m).
struct Derivative {
    std::uint32_t indet = 1;
    std::vector<std::uint32_t> exps;

    std::uint64_t order() const;
    // True when other = theta * this for some derivation monomial theta.
    bool divides(const Derivative& other) const;
    bool is_proper_derivative_of(const Derivative& base) const;
    friend bool operator==(const Derivative&, const Derivative&) = default;
};

// Shape of the differential ring: n indeterminates, m derivations, orderly ranking.
struct DiffShape {
    std::uint32_t n = 1;
    std::uint32_t m = 1;
    friend bool operator==(const DiffShape&, const DiffShape&) = default;
};

// Number of exponent vectors of length dims with coordinate sum s.
std::uint64_t count_vectors(std::uint64_t s, std::uint32_t dims);

// Orderly ranking: order first, then exponent vectors lexicographically ascending,
// then indeterminate index. Indices start at 1.
std::uint64_t rank_index(const Derivative& u, const DiffShape& shape);
Derivative derivative_at(std::uint64_t index, const DiffShape& shape);
// -1, 0, 1 under the ranking.
int rank_compare(const Derivative& a, const Derivative& b);

// Least derivative that is a derivative of both; indeterminates must agree.
Derivative common_derivative(const Derivative& a, const Derivative& b);

// Text form: "d1^2 d2 x3"; bare "x1" for an underived indeterminate.
std::string derivative_str(const Derivative& u);
Derivative parse_derivative(const std::string& text, const DiffShape& shape);

}  // namespace effdiff
