#include "effdiff/autoreduced.hpp"

#include <algorithm>
#include <functional>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

DiffPolys min_rank_subset(const DiffPolys& set) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (!set[i].is_constant()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return set[a].rank() < set[b].rank(); });
    DiffPolys out;
    for (auto i : order)
        if (reduced(set[i], out)) out.push_back(set[i]);
    return out;
}

void check_cardinality(const DiffPolys& set) {
    std::uint64_t b = 0;
    for (const auto& f : set) b = std::max(b, f.size_bound());
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * b, b);
    if (mpz_class(static_cast<unsigned long>(set.size())) > c)
        throw ContractViolation("autoreduced set of size " + std::to_string(set.size()) + " exceeds C(2b, b) for b = " +
                                std::to_string(b));
}

namespace {

std::uint64_t size_of(const DiffPolys& set) {
    std::uint64_t b = 0;
    for (const auto& f : set) b = std::max(b, f.size_bound());
    return b;
}

std::uint64_t max_index(const DiffPolys& set) {
    std::uint64_t b = 0;
    for (const auto& f : set) b = std::max(b, f.max_index());
    return b;
}

std::uint64_t max_degree(const DiffPolys& set) {
    std::uint64_t d = 0;
    for (const auto& f : set) d = std::max(d, f.total_degree());
    return d;
}

std::optional<std::uint64_t> as_u64(const Val& v) {
    if (!v.exact || !v.v.fits_ulong_p()) return std::nullopt;
    return v.v.get_ui();
}

// Next set from `base` plus new members; ContractViolation unless the rank drops.
DiffPolys descend(const DiffPolys& base, const DiffPolys& extra) {
    DiffPolys pool = base;
    pool.insert(pool.end(), extra.begin(), extra.end());
    DiffPolys next = min_rank_subset(pool);
    if (compare_sets(next, base) >= 0) throw ContractViolation("autoreduced set rank did not decrease");
    if (!is_autoreduced(next)) throw ContractViolation("minimal-rank subset is not autoreduced");
    check_cardinality(next);
    return next;
}

}  // namespace

AutoreduceResult autoreduce(const DiffPolys& input, const AutoreduceOptions& opt) {
    for (const auto& f : input)
        if (f.is_constant()) throw DomainError("autoreduce: constant in the input");
    AutoreduceResult res;
    std::uint64_t b = size_of(input);
    DiffPolys cur = min_rank_subset(input);
    check_cardinality(cur);
    res.history.push_back(cur);
    Budget bud;
    Val cap(b);
    res.degree_caps.push_back(as_u64(cap));
    for (std::uint64_t round = 0;; ++round) {
        if (round >= opt.max_rounds) throw Aborted("autoreduce: round cap reached");
        if (auto c = res.degree_caps.back(); c && (max_index(cur) > b || max_degree(cur) > *c))
            throw ContractViolation("autoreduce: intermediate set outside its degree cap");
        std::optional<DiffPoly> rem;
        for (const auto& f : input) {
            auto cert = pseudodivide(f, cur);
            if (!cert.remainder.is_zero()) {
                rem = cert.remainder;
                break;
            }
        }
        if (!rem) break;
        if (rem->is_constant()) {
            res.unit = true;
            res.set = cur;
            return res;
        }
        cur = descend(cur, {*rem});
        res.history.push_back(cur);
        cap = frak_g(cap, Val(b), bud);
        res.degree_caps.push_back(as_u64(cap));
    }
    res.set = cur;
    for (const auto& f : input) res.certificates.push_back(pseudodivide(f, cur));
    return res;
}

std::vector<SPair> s_pairs(const DiffPolys& set) {
    std::vector<SPair> out;
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) {
            Derivative ua = set[a].leader(), ub = set[b].leader();
            if (ua.indet != ub.indet) continue;
            Derivative v = common_derivative(ua, ub);
            out.push_back({a, b, v, delta_s_poly(set[a], set[b], v)});
        }
    return out;
}

bool is_reduction_coherent(const DiffPolys& set) {
    for (const auto& p : s_pairs(set))
        if (!pseudodivide(p.delta, set).remainder.is_zero()) return false;
    return true;
}

CoherentResult coherent(const DiffPolys& input, bool containment, const AutoreduceOptions& opt) {
    if (!is_autoreduced(input)) throw DomainError("coherent: input is not autoreduced");
    CoherentResult res;
    DiffPolys cur = min_rank_subset(input);
    res.history.push_back(cur);
    if (input.empty()) {
        res.set = cur;
        return res;
    }
    const auto& shape = input.front().shape();
    Budget bud;
    Val cap(size_of(input));
    res.size_caps.push_back(as_u64(cap));
    for (std::uint64_t round = 0;; ++round) {
        if (round >= opt.max_rounds) throw Aborted("coherent: round cap reached");
        if (auto c = res.size_caps.back(); c && size_of(cur) > *c)
            throw ContractViolation("coherent: intermediate set outside its size cap");
        DiffPolys extra;
        for (const auto& p : s_pairs(cur)) {
            auto cert = pseudodivide(p.delta, cur);
            if (!cert.remainder.is_zero()) extra.push_back(cert.remainder);
        }
        if (extra.empty() && containment)
            for (const auto& f : input) {
                auto cert = pseudodivide(f, cur);
                if (!cert.remainder.is_zero()) {
                    extra.push_back(cert.remainder);
                    break;
                }
            }
        if (extra.empty()) break;
        if (std::any_of(extra.begin(), extra.end(), [](const DiffPoly& r) { return r.is_constant(); })) {
            res.unit = true;
            res.set = cur;
            return res;
        }
        cur = descend(cur, extra);
        res.history.push_back(cur);
        Val D = cap;
        Val two_d = arith::add(D, D, bud);
        Val width = arith::choose_sum(two_d, Val(shape.m - 1), bud);
        Val idx = arith::mul(arith::mul(width, Val(shape.n), bud), arith::add(D, Val(1), bud), bud);
        cap = frak_g(D, idx, bud);
        res.size_caps.push_back(as_u64(cap));
    }
    res.set = cur;
    for (const auto& p : s_pairs(cur)) res.pair_certificates.push_back(pseudodivide(p.delta, cur));
    if (containment)
        for (const auto& f : input) res.input_certificates.push_back(pseudodivide(f, cur));
    return res;
}

const char* to_string(Stratum s) {
    switch (s) {
        case Stratum::order: return "order";
        case Stratum::saturated: return "saturated";
        case Stratum::mixed: return "mixed";
    }
    return "?";
}

std::vector<std::pair<DerivedGen, DiffPoly>> order_stratum(const DiffPolys& set, std::uint64_t k) {
    std::vector<std::pair<DerivedGen, DiffPoly>> out;
    for (std::size_t j = 0; j < set.size(); ++j) {
        const auto& shape = set[j].shape();
        Derivative mu = set[j].leader();
        std::uint64_t cap = rank_index(mu, shape) + k;
        // Rank indices grow with order, so stop at the first order with nothing in range.
        for (std::uint32_t t = 0;; ++t) {
            bool any = false;
            std::vector<std::uint32_t> theta(shape.m, 0);
            std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t i, std::uint32_t left) {
                if (i + 1 == shape.m) {
                    theta[i] = left;
                    Derivative u = mu;
                    for (std::uint32_t q = 0; q < shape.m; ++q) u.exps[q] += theta[q];
                    if (rank_index(u, shape) <= cap) {
                        any = true;
                        out.push_back({DerivedGen{j, theta}, set[j].apply(theta)});
                    }
                    return;
                }
                for (std::uint32_t e = 0; e <= left; ++e) {
                    theta[i] = e;
                    rec(i + 1, left - e);
                }
            };
            rec(0, t);
            if (!any) break;
        }
    }
    return out;
}

bool StratifiedResult::verify(const DiffPolys& set) const {
    if (!membership.found()) return true;
    std::uint64_t nv = tested.max_index();
    std::vector<DiffPoly> gens;
    for (const auto& g : generators) {
        if (g.element >= set.size()) return false;
        gens.push_back(set[g.element].apply(g.theta));
        nv = std::max(nv, gens.back().max_index());
    }
    std::vector<Poly> polys;
    for (const auto& g : gens) polys.push_back(g.poly_in(nv));
    return membership.cert.verify(tested.poly_in(nv), polys);
}

StratifiedResult stratified_membership(const DiffPoly& g, const DiffPolys& set, std::uint64_t k, Stratum which,
                                       std::uint64_t degree_cap, const SearchLimits& limits) {
    StratifiedResult res;
    std::vector<DiffPoly> gens;
    if (which == Stratum::saturated) {
        for (std::size_t j = 0; j < set.size(); ++j) {
            res.generators.push_back({j, std::vector<std::uint32_t>(g.shape().m, 0)});
            gens.push_back(set[j]);
        }
    } else {
        for (auto& [gen, p] : order_stratum(set, k)) {
            res.generators.push_back(gen);
            gens.push_back(std::move(p));
        }
    }
    res.tested = g;
    if (which != Stratum::order) {
        res.tested = h_product(set).pow(k) * g;
        res.within_stratum = g.within(k);
    }
    std::uint64_t nv = res.tested.max_index();
    for (const auto& p : gens) nv = std::max(nv, p.max_index());
    std::vector<Poly> polys;
    for (const auto& p : gens) polys.push_back(p.poly_in(nv));
    res.degree_bound = degree_cap;
    res.membership = membership_bounded(res.tested.poly_in(nv), polys, degree_cap, limits);
    return res;
}

}  // namespace effdiff
