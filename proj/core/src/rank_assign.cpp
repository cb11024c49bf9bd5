#include "effdiff/rank_assign.hpp"

#include <algorithm>
#include <map>

#include "effdiff/errors.hpp"

namespace effdiff {

namespace {

bool below_eq(const NatVec& a, const NatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Ordinal from_coeffs(const std::vector<BigNat>& by_exp) {
    std::vector<OrdTerm> terms;
    for (std::size_t j = by_exp.size(); j-- > 0;)
        if (by_exp[j] != 0) terms.push_back({Ordinal(static_cast<unsigned long>(j)), by_exp[j]});
    return Ordinal(std::move(terms));
}

}  // namespace

bool is_bad_dickson(const std::vector<NatVec>& seq) {
    for (std::size_t j = 0; j < seq.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (below_eq(seq[i], seq[j])) return false;
    return true;
}

Ordinal bad_dickson_ordinal(const std::vector<NatVec>& seq, std::uint32_t dims) {
    if (dims > 3) throw UnsupportedDimension("bad Dickson ordinal: unsupported dimension " + std::to_string(dims));
    for (const auto& a : seq)
        if (a.size() != dims) throw DomainError("bad Dickson ordinal: vector of wrong length");
    if (!is_bad_dickson(seq)) throw DomainError("not a bad Dickson sequence");

    NatVec bound(dims, 0);
    for (const auto& a : seq)
        for (std::uint32_t s = 0; s < dims; ++s) bound[s] = std::max(bound[s], a[s]);

    // A flat fixes the coordinates in `fixed` to `v`; it lies in the residual set
    // when every entry is escaped through some fixed coordinate.
    auto inside = [&](unsigned fixed, const NatVec& v) {
        for (const auto& a : seq) {
            bool escaped = false;
            for (std::uint32_t s = 0; s < dims && !escaped; ++s)
                if ((fixed >> s & 1U) && v[s] < a[s]) escaped = true;
            if (!escaped) return false;
        }
        return true;
    };

    std::vector<BigNat> count(dims + 1, 0);
    for (unsigned fixed = 0; fixed < (1U << dims); ++fixed) {
        NatVec v(dims, 0);
        bool empty_range = false;
        for (std::uint32_t s = 0; s < dims; ++s)
            if ((fixed >> s & 1U) && bound[s] == 0) empty_range = true;
        if (empty_range) continue;
        for (;;) {
            if (inside(fixed, v)) {
                bool maximal = true;
                for (std::uint32_t s = 0; s < dims && maximal; ++s)
                    if ((fixed >> s & 1U) && inside(fixed & ~(1U << s), v)) maximal = false;
                if (maximal) count[dims - static_cast<std::uint32_t>(__builtin_popcount(fixed))] += 1;
            }
            std::uint32_t s = 0;
            for (; s < dims; ++s) {
                if (!(fixed >> s & 1U)) continue;
                if (++v[s] < bound[s]) break;
                v[s] = 0;
            }
            if (s == dims) break;
        }
    }
    return from_coeffs(count);
}

bool is_bad_leader(const std::vector<Derivative>& seq, const DiffShape& shape) {
    for (const auto& u : seq)
        if (u.indet < 1 || u.indet > shape.n || u.exps.size() != shape.m) return false;
    for (std::size_t j = 1; j < seq.size(); ++j)
        if (rank_compare(seq[j - 1], seq[j]) >= 0) return false;
    for (std::size_t j = 0; j < seq.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (seq[i].divides(seq[j])) return false;
    return true;
}

Ordinal bad_leader_ordinal(const std::vector<Derivative>& seq, const DiffShape& shape) {
    if (!is_bad_leader(seq, shape)) throw DomainError("not a bad leader sequence");
    Ordinal total;
    for (std::uint32_t i = 1; i <= shape.n; ++i) {
        std::vector<NatVec> vs;
        for (const auto& u : seq)
            if (u.indet == i) vs.emplace_back(u.exps.begin(), u.exps.end());
        total = natural_sum(total, bad_dickson_ordinal(vs, shape.m));
    }
    return total;
}

namespace {

// Extension set of a bad leader sequence: derivatives above the last entry that
// are not derivatives of any entry.
struct Extensions {
    DiffShape shape;
    std::vector<std::vector<NatVec>> used;  // per indeterminate
    std::uint64_t cut = 0;                  // rank index of the last entry

    explicit Extensions(const DiffShape& s) : shape(s), used(s.n) {}

    bool admits(const Derivative& u) const {
        if (rank_index(u, shape) <= cut) return false;
        NatVec x(u.exps.begin(), u.exps.end());
        for (const auto& e : used[u.indet - 1])
            if (below_eq(e, x)) return false;
        return true;
    }

    void push(const Derivative& u) {
        used[u.indet - 1].emplace_back(u.exps.begin(), u.exps.end());
        cut = rank_index(u, shape);
    }

    bool admits_point(std::uint32_t indet, const NatVec& x) const {
        Derivative u{indet, std::vector<std::uint32_t>(x.begin(), x.end())};
        return admits(u);
    }

    // omega times the potential: full spaces weigh omega^m, residual lines weigh
    // omega*(offset+2), isolated points weigh omega.
    Ordinal scaled_potential() const {
        BigNat full = 0, finite = 0;
        for (std::uint32_t i = 0; i < shape.n; ++i) {
            const auto& es = used[i];
            if (es.empty()) {
                full += 1;
                continue;
            }
            if (shape.m == 1) {
                std::uint64_t lim = es.front()[0];
                for (const auto& e : es) lim = std::min(lim, e[0]);
                for (std::uint64_t k = 0; k < lim; ++k)
                    if (admits_point(i + 1, {k})) finite += 1;
                continue;
            }
            std::uint64_t cols = UINT64_MAX, rows = UINT64_MAX, maxx = 0, maxy = 0;
            for (const auto& e : es) {
                cols = std::min(cols, e[0]);
                rows = std::min(rows, e[1]);
                maxx = std::max(maxx, e[0]);
                maxy = std::max(maxy, e[1]);
            }
            for (std::uint64_t c = 0; c < cols; ++c) finite += c + 2;
            for (std::uint64_t r = 0; r < rows; ++r) finite += r + 2;
            for (std::uint64_t x = cols; x < maxx; ++x)
                for (std::uint64_t y = rows; y < maxy; ++y)
                    if (admits_point(i + 1, {x, y})) finite += 1;
        }
        std::vector<OrdTerm> terms;
        if (full != 0) terms.push_back({Ordinal(static_cast<unsigned long>(shape.m)), full});
        if (finite != 0) {
            if (shape.m == 1 && full != 0) terms.back().coef += finite;
            else terms.push_back({Ordinal(1UL), finite});
        }
        return Ordinal(std::move(terms));
    }
};

}  // namespace

Ordinal ranked_leader_ordinal(const std::vector<Derivative>& seq, const DiffShape& shape) {
    if (shape.m < 1 || shape.m > 2)
        throw UnsupportedDimension("ranked leader ordinal: unsupported number of derivations " +
                                   std::to_string(shape.m));
    if (!is_bad_leader(seq, shape)) throw DomainError("not a bad leader sequence");
    Extensions parent(shape);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) parent.push(seq[k]);
    if (seq.empty()) return parent.scaled_potential();

    const Derivative& last = seq.back();
    std::uint64_t target = rank_index(last, shape);
    Ordinal running;
    bool started = false;
    for (std::uint64_t j = parent.cut + 1; j <= target; ++j) {
        Derivative u = derivative_at(j, shape);
        if (!parent.admits(u)) continue;
        Extensions child = parent;
        child.push(u);
        Ordinal own = child.scaled_potential();
        if (!started) {
            running = own;
            started = true;
        } else {
            Ordinal next = left_sum(running, Ordinal(1UL));
            running = next < own ? own : next;
        }
    }
    return running;
}

Ordinal autoreduced_ordinal(const RankSeq& gamma, const DiffShape& shape) {
    std::vector<Derivative> leaders;
    for (const auto& [u, b] : gamma) {
        if (b < 1) throw DomainError("autoreduced rank sequence has a degree below 1");
        leaders.push_back(u);
    }
    if (!is_bad_leader(leaders, shape)) throw DomainError("leaders do not form a bad leader sequence");
    Ordinal total;
    std::vector<Derivative> prefix;
    for (const auto& [u, b] : gamma) {
        prefix.push_back(u);
        total = left_sum(total, Ordinal::omega_pow(ranked_leader_ordinal(prefix, shape), b));
    }
    return left_sum(total, Ordinal::omega_pow(ranked_leader_ordinal(prefix, shape)));
}

int rankseq_compare(const RankSeq& a, const RankSeq& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = rank_compare(a[i].first, b[i].first);
        if (c != 0) return c;
        int d = cmp(a[i].second, b[i].second);
        if (d != 0) return d < 0 ? -1 : 1;
    }
    if (a.size() == b.size()) return 0;
    return a.size() > b.size() ? -1 : 1;
}

Ordinal multiset_ordinal(const std::vector<std::pair<BigNat, BigNat>>& value_counts) {
    std::map<BigNat, BigNat> counts;
    BigNat size = 0;
    for (const auto& [v, c] : value_counts) {
        if (v < 0 || c < 0) throw DomainError("multiset entries must be natural");
        if (c == 0) continue;
        counts[v] += c;
        size += c;
    }
    std::vector<OrdTerm> terms;
    for (auto it = counts.rbegin(); it != counts.rend(); ++it)
        if (it->first > 0) terms.push_back({Ordinal(BigNat(it->first - 1)), it->second});
    return left_sum(Ordinal(std::move(terms)), Ordinal(BigNat(2 * size)));
}

}  // namespace effdiff
