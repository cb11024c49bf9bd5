#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace effdiff {

using Rational = mpq_class;
using Monomial = std::vector<std::uint32_t>;

std::uint64_t monomial_degree(const Monomial& m);
// Graded lexicographic: total degree, then the first differing exponent.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};
bool monomial_divides(const Monomial& a, const Monomial& b);

// Sparse polynomial over Q in a fixed number of variables.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, GrlexLess>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rational& c);
    // Variable index is 0-based.
    static Poly var(std::size_t nvars, std::size_t i);
    static Poly monomial(std::size_t nvars, Monomial m, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::uint64_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    Rational coeff(const Monomial& m) const;
    // Greatest monomial under grlex; DomainError on zero.
    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    void add_term(const Monomial& m, const Rational& c);

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scale(const Rational& c) const;
    Poly mul_monomial(const Monomial& m, const Rational& c = 1) const;
    Poly pow(std::uint64_t e) const;

    Poly substitute(std::size_t var, const Poly& by) const;
    // Formal partial derivative.
    Poly partial(std::size_t var) const;
    // Coefficient of var^k, as a polynomial not involving var.
    Poly coeff_in(std::size_t var, std::uint32_t k) const;
    Rational evaluate(const std::vector<Rational>& point) const;
    // Same polynomial in a ring with more variables.
    Poly extend(std::size_t nvars) const;
    bool is_homogeneous() const;

    using Namer = std::function<std::string(std::size_t)>;
    static std::string default_name(std::size_t i) { return "x" + std::to_string(i + 1); }
    std::string str(const Namer& name = default_name) const;

    // Resolves a variable written as optional prefix words plus a name, e.g. "d1 d2 x3".
    using Resolver = std::function<std::size_t(const std::vector<std::string>& words)>;
    static Poly parse(std::string_view text, std::size_t nvars);
    static Poly parse(std::string_view text, std::size_t nvars, const Resolver& resolve);

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    std::size_t nvars_ = 0;
    Terms terms_;
    void check_ring(const Poly& o) const;
};

// Monomials of total degree <= d in n variables, in grlex order.
std::vector<Monomial> monomials_up_to(std::size_t n, std::uint64_t d);

}  // namespace effdiff
