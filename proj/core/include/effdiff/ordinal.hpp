#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace effdiff {

using BigNat = mpz_class;

struct OrdTerm;

// Ordinal below epsilon_0 in Cantor normal form. Immutable; copies share storage.
class Ordinal {
public:
    Ordinal();
    Ordinal(unsigned long n);  // NOLINT: finite ordinals convert implicitly
    explicit Ordinal(const BigNat& n);
    // Builds from terms; throws DomainError unless exponents strictly descend
    // and coefficients are positive.
    explicit Ordinal(std::vector<OrdTerm> terms);

    static Ordinal omega();
    // omega^e * c
    static Ordinal omega_pow(const Ordinal& e, const BigNat& c = 1);

    const std::vector<OrdTerm>& terms() const;
    bool is_zero() const;
    bool is_finite() const;
    bool is_successor() const;
    bool is_limit() const;
    // Value of a finite ordinal; DomainError otherwise.
    BigNat finite_value() const;

    // Largest and least exponent; both 0 for the zero ordinal.
    Ordinal max_exp() const;
    Ordinal min_exp() const;

    // alpha[x]: alpha-1 on successors; on limits the least term omega^g*c becomes
    // omega^g*(c-1) + omega^{g[x]}*x.
    Ordinal fundamental(const BigNat& x) const;
    Ordinal predecessor() const;

    // |alpha|: largest coefficient anywhere in the nested form.
    BigNat coord_bound() const;
    std::size_t depth() const;
    std::size_t hash() const;

    std::string str() const;
    static Ordinal parse(std::string_view text);

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
    std::shared_ptr<const std::vector<OrdTerm>> terms_;

    // Skips validation; callers guarantee strictly descending exponents and positive coefficients.
    static Ordinal trusted(std::vector<OrdTerm> terms);
};

struct OrdTerm {
    Ordinal exp;
    BigNat coef;
};

enum class Cmp { less, equal, greater };
Cmp compare(const Ordinal& a, const Ordinal& b);

Ordinal natural_sum(const Ordinal& a, const Ordinal& b);
Ordinal natural_prod(const Ordinal& a, const Ordinal& b);
// Ordinary ordinal addition a + b.
Ordinal left_sum(const Ordinal& a, const Ordinal& b);

const char* to_string(Cmp c);

}  // namespace effdiff
