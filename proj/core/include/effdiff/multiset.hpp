#pragma once

#include <initializer_list>
#include <map>
#include <string>

#include "effdiff/bound_expr.hpp"

namespace effdiff {

// Finite multiset of naturals: value -> positive multiplicity.
class Multiset {
public:
    Multiset() = default;
    Multiset(std::initializer_list<unsigned long> values);

    void add(const BigNat& value, const BigNat& copies = 1);
    // Removes copies of value; DomainError if fewer are present.
    void remove(const BigNat& value, const BigNat& copies = 1);
    BigNat count(const BigNat& value) const;
    bool contains(const BigNat& value) const { return count(value) > 0; }
    bool empty() const { return counts_.empty(); }
    // Least element; DomainError when empty.
    const BigNat& min() const;
    BigNat size() const;
    const std::map<BigNat, BigNat>& counts() const { return counts_; }
    std::string str() const;

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::map<BigNat, BigNat> counts_;
};

// Remove one k, add k*(D(i)-1) copies of k-1.
Multiset multiset_step(const Multiset& tau, const BigNat& k, const BigNat& i, const MonotoneFn& D,
                       Budget& budget);

Cmp multi_compare(const Multiset& a, const Multiset& b);

// m_{tau,D}(i) = 1 + m_{step(tau, min tau, i), D}(i+1), m_{empty,D}(i) = 0.
Val frak_m(const Multiset& tau, const MonotoneFn& D, const Val& i, Budget& budget);
// m_{{n}, D+1}(0) + 1
Val frak_m_star(const MonotoneFn& D, const Val& n, Budget& budget);

// o(tau) = sum_{v>0} omega^{v-1} c_v + 2|tau|
Ordinal multiset_ordinal(const Multiset& tau);

}  // namespace effdiff
