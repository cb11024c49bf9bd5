#include "effdiff/multiset.hpp"

#include <sstream>

#include "effdiff/errors.hpp"
#include "effdiff/rank_assign.hpp"

namespace effdiff {

Multiset::Multiset(std::initializer_list<unsigned long> values) {
    for (unsigned long v : values) add(v);
}

void Multiset::add(const BigNat& value, const BigNat& copies) {
    if (value < 0 || copies < 0) throw DomainError("multiset entries are naturals");
    if (copies == 0) return;
    counts_[value] += copies;
}

void Multiset::remove(const BigNat& value, const BigNat& copies) {
    auto it = counts_.find(value);
    if (it == counts_.end() || it->second < copies)
        throw DomainError("multiset does not contain " + copies.get_str() + " copies of " + value.get_str());
    it->second -= copies;
    if (it->second == 0) counts_.erase(it);
}

BigNat Multiset::count(const BigNat& value) const {
    auto it = counts_.find(value);
    return it == counts_.end() ? BigNat(0) : it->second;
}

const BigNat& Multiset::min() const {
    if (counts_.empty()) throw DomainError("min of the empty multiset");
    return counts_.begin()->first;
}

BigNat Multiset::size() const {
    BigNat s = 0;
    for (const auto& [v, c] : counts_) s += c;
    return s;
}

std::string Multiset::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto it = counts_.rbegin(); it != counts_.rend(); ++it) {
        if (!first) os << ", ";
        first = false;
        os << it->first.get_str();
        if (it->second != 1) os << " x" << it->second.get_str();
    }
    os << '}';
    return os.str();
}

namespace {

BigNat copies_for(const BigNat& k, const Val& d) {
    return d.v >= 1 ? BigNat(k * (d.v - 1)) : BigNat(0);
}

}  // namespace

Multiset multiset_step(const Multiset& tau, const BigNat& k, const BigNat& i, const MonotoneFn& D,
                       Budget& budget) {
    if (!tau.contains(k)) throw DomainError(k.get_str() + " is not in " + tau.str());
    Multiset out = tau;
    out.remove(k);
    if (k == 0) return out;
    Val d = D(Val(i), budget);
    if (!d.exact) throw DomainError("D(" + i.get_str() + ") exceeds the evaluation budget");
    out.add(k - 1, copies_for(k, d));
    return out;
}

Cmp multi_compare(const Multiset& a, const Multiset& b) {
    auto ia = a.counts().rbegin(), ib = b.counts().rbegin();
    while (ia != a.counts().rend() && ib != b.counts().rend()) {
        if (ia->first != ib->first) return ia->first > ib->first ? Cmp::greater : Cmp::less;
        if (ia->second != ib->second) return ia->second > ib->second ? Cmp::greater : Cmp::less;
        ++ia;
        ++ib;
    }
    if (ia != a.counts().rend()) return Cmp::greater;
    if (ib != b.counts().rend()) return Cmp::less;
    return Cmp::equal;
}

Val frak_m(const Multiset& start, const MonotoneFn& D, const Val& i0, Budget& budget) {
    // Iterative unroll. A run of zeros at the bottom is removed in one bulk step.
    Multiset tau = start;
    BigNat i = i0.v;
    BigNat r = 0;
    bool exact = i0.exact;
    while (!tau.empty()) {
        if (!budget.spend()) return Val(r, false);
        BigNat k = tau.min();
        if (k == 0) {
            BigNat c = tau.count(0);
            tau.remove(0, c);
            r += c;
            i += c;
            continue;
        }
        Val d = D(Val(i), budget);
        if (!d.exact) return Val(r + 1, false);
        BigNat copies = copies_for(k, d);
        if (mpz_sizeinbase(copies.get_mpz_t(), 2) > budget.max_bits) return Val(r + 1, false);
        tau.remove(k);
        tau.add(k - 1, copies);
        r += 1;
        i += 1;
    }
    // A lower starting index gives a smaller count, so an inexact i0 still bounds from below.
    return Val(r, exact);
}

Val frak_m_star(const MonotoneFn& D, const Val& n, Budget& budget) {
    MonotoneFn D1(
        D.name() + "+1", [D](const Val& x, Budget& b) { return arith::add(D(x, b), Val(1), b); },
        D.inflationary(), BoundExpr::fn("i", BoundExpr::add(BoundExpr::apply(D.expr(), BoundExpr::var("i")),
                                                            BoundExpr::constant(1))));
    Multiset tau;
    tau.add(n.v);
    Val r = frak_m(tau, D1, Val(0), budget);
    r = arith::add(r, Val(1), budget);
    if (!n.exact) r.exact = false;
    return r;
}

Ordinal multiset_ordinal(const Multiset& tau) {
    std::vector<std::pair<BigNat, BigNat>> vc(tau.counts().begin(), tau.counts().end());
    return multiset_ordinal(vc);
}

}  // namespace effdiff
