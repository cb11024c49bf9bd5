#pragma once

// Small reference implementations the library is checked against. Each one is
// written directly from the definitions, with plain integers and no shortcuts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <optional>
#include <random>
#include <vector>

#include "effdiff/ordinal.hpp"

namespace oracle {

// Ordinals below w^w as coefficient vectors, index = exponent.
struct SmallOrd {
    std::vector<std::uint64_t> c;

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }

    effdiff::Ordinal to_ordinal() const {
        std::vector<effdiff::OrdTerm> terms;
        for (std::size_t e = c.size(); e-- > 0;)
            if (c[e]) terms.push_back({effdiff::Ordinal(static_cast<unsigned long>(e)), effdiff::BigNat(static_cast<unsigned long>(c[e]))});
        return effdiff::Ordinal(std::move(terms));
    }

    friend int cmp(const SmallOrd& a, const SmallOrd& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size() ? -1 : 1;
        for (std::size_t e = a.c.size(); e-- > 0;)
            if (a.c[e] != b.c[e]) return a.c[e] < b.c[e] ? -1 : 1;
        return 0;
    }

    friend SmallOrd natural_sum(SmallOrd a, const SmallOrd& b) {
        a.c.resize(std::max(a.c.size(), b.c.size()));
        for (std::size_t e = 0; e < b.c.size(); ++e) a.c[e] += b.c[e];
        a.trim();
        return a;
    }

    friend SmallOrd natural_prod(const SmallOrd& a, const SmallOrd& b) {
        SmallOrd r;
        if (a.zero() || b.zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }

    // Ordinary (left-absorbing) sum.
    friend SmallOrd left_sum(SmallOrd a, const SmallOrd& b) {
        if (b.zero()) return a;
        std::size_t top = b.c.size() - 1;
        a.c.resize(std::max(a.c.size(), b.c.size()));
        for (std::size_t e = 0; e < top; ++e) a.c[e] = b.c[e];
        a.c[top] += b.c[top];
        a.trim();
        return a;
    }

    // alpha[x]: predecessor at successors, otherwise the lowest w^e loses one copy for x copies of w^(e-1).
    SmallOrd fundamental(std::uint64_t x) const {
        SmallOrd r = *this;
        std::size_t e = 0;
        while (r.c[e] == 0) ++e;
        r.c[e] -= 1;
        if (e > 0) r.c[e - 1] += x;
        r.trim();
        return r;
    }
};

inline SmallOrd random_small_ord(std::mt19937_64& r, std::size_t max_exp, std::uint64_t max_coef) {
    SmallOrd a;
    a.c.assign(r() % (max_exp + 2), 0);
    for (auto& v : a.c) v = r() % (max_coef + 1);
    a.trim();
    return a;
}

// g^alpha(b) for g(x) = x + 1, straight from the recursion g^0 = id, g^alpha(b) = g^{alpha[b]}(b + 1).
// Empty when more than `cap` steps would be needed.
inline std::optional<std::uint64_t> successor_iterate(SmallOrd alpha, std::uint64_t b, std::uint64_t cap) {
    for (std::uint64_t steps = 0; !alpha.zero(); ++steps) {
        if (steps > cap) return std::nullopt;
        alpha = alpha.fundamental(b);
        b += 1;
    }
    return b;
}

// m_{tau,D}(i): one element at a time, always the least; k > 0 becomes k*(D(i)-1) copies of k-1.
template <class Fn>
std::optional<std::uint64_t> unroll_m(std::vector<std::uint64_t> tau, Fn D, std::uint64_t i, std::uint64_t cap) {
    std::multiset<std::uint64_t> s(tau.begin(), tau.end());
    std::uint64_t r = 0;
    while (!s.empty()) {
        if (++r > cap || s.size() > cap) return std::nullopt;
        std::uint64_t k = *s.begin();
        s.erase(s.begin());
        if (k > 0) {
            std::uint64_t copies = k * (D(i) - 1);
            for (std::uint64_t t = 0; t < copies; ++t) s.insert(k - 1);
        }
        i += 1;
    }
    return r;
}

}  // namespace oracle
