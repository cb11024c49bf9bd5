#include "effdiff/ideal_chains.hpp"

#include <algorithm>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"
#include "effdiff/multiset.hpp"

namespace effdiff {

namespace {

EvalOutcome m_star_outcome(const MonotoneFn& D, std::uint32_t n, Budget budget) {
    Val v = frak_m_star(D, Val(n), budget);
    EvalOutcome out;
    out.exact = v.exact;
    out.value = v.v;
    if (!v.exact) out.residue = "(m_star " + D.expr().sexpr() + " " + std::to_string(n) + ")";
    return out;
}

void check_bound(const EvalOutcome& bound, std::uint64_t j, const char* what) {
    if (bound.exact && BigNat(j) > bound.value)
        throw ContractViolation(std::string(what) + " index " + std::to_string(j) + " exceeds m* = " +
                                bound.value.get_str());
}

}  // namespace

DicksonWitness dickson_witness(const Stream<NatVec>& stream, const MonotoneFn& D, std::uint32_t n,
                               std::uint64_t scan_cap, Budget budget) {
    std::vector<NatVec> seen;
    for (std::uint64_t j = 1; j <= scan_cap; ++j) {
        auto a = stream(j);
        if (!a) throw Aborted("stream ended at index " + std::to_string(j) + " without a witness");
        if (a->size() != n) throw DomainError("entry " + std::to_string(j) + " has the wrong length");
        Budget b = budget;
        Val cap = D(Val(BigNat(j)), b);
        std::uint64_t norm = a->empty() ? 0 : *std::max_element(a->begin(), a->end());
        if (cap.exact && BigNat(norm) > cap.v)
            throw DomainError("entry " + std::to_string(j) + " has norm " + std::to_string(norm) + " > D(" +
                              std::to_string(j) + ") = " + cap.v.get_str());
        for (std::uint64_t i = 1; i < j; ++i) {
            const NatVec& x = seen[i - 1];
            bool le = true;
            for (std::size_t s = 0; s < n && le; ++s) le = x[s] <= (*a)[s];
            if (le) {
                DicksonWitness w{i, j, m_star_outcome(D, n, budget)};
                check_bound(w.bound, j, "Dickson");
                return w;
            }
        }
        seen.push_back(*a);
    }
    throw Aborted("scan cap " + std::to_string(scan_cap) + " reached without a Dickson witness");
}

Poly reduce_by(const Poly& f, const std::vector<Poly>& fs) {
    Poly r = f;
    Poly rem(f.nvars());
    while (!r.is_zero()) {
        const Monomial lm = r.leading_monomial();
        const Rational lc = r.leading_coeff();
        bool divided = false;
        for (const auto& g : fs) {
            if (g.is_zero() || !monomial_divides(g.leading_monomial(), lm)) continue;
            Monomial q = lm;
            for (std::size_t v = 0; v < q.size(); ++v) q[v] -= g.leading_monomial()[v];
            r -= g.mul_monomial(q, lc / g.leading_coeff());
            divided = true;
            break;
        }
        if (!divided) {
            rem.add_term(lm, lc);
            r.add_term(lm, -lc);
        }
    }
    return rem;
}

bool HilbertWitness::verify() const {
    if (certificates.size() != upper.size()) return false;
    for (std::size_t k = 0; k < upper.size(); ++k)
        if (!certificates[k].verify(upper[k], lower)) return false;
    return true;
}

HilbertWitness hilbert_chain_witness(const Stream<std::vector<Poly>>& stream, const MonotoneFn& D, std::uint32_t n,
                                     std::uint64_t scan_cap, const SearchLimits& limits, Budget budget) {
    HilbertWitness w;
    std::vector<Poly> prev;
    auto degree_cap = [&](std::uint64_t i) -> std::uint64_t {
        Budget b = budget;
        Val d = frak_d(Val(n), D(Val(BigNat(i)), b), b);
        return d.exact && d.v.fits_ulong_p() ? d.v.get_ui() : UINT64_MAX;
    };
    for (std::uint64_t j = 1; j <= scan_cap; ++j) {
        auto L = stream(j);
        if (!L) throw Aborted("stream ended at index " + std::to_string(j) + " before stabilizing");
        Budget b = budget;
        Val cap = D(Val(BigNat(j)), b);
        for (const auto& g : *L) {
            if (g.nvars() != n) throw DomainError("generator at index " + std::to_string(j) + " is in the wrong ring");
            if (cap.exact && !g.is_zero() && BigNat(g.total_degree()) > cap.v)
                throw DomainError("generator " + g.str() + " at index " + std::to_string(j) + " exceeds D(" +
                                  std::to_string(j) + ")");
        }
        if (j >= 2) {
            std::uint64_t bound = degree_cap(j);
            for (const auto& g : prev) {
                auto r = membership_bounded(g, *L, bound, limits);
                if (r.status == MemberStatus::not_found)
                    throw DomainError("chain not ascending: " + g.str() + " from index " + std::to_string(j - 1) +
                                      " is not in the ideal at index " + std::to_string(j));
                if (r.status == MemberStatus::undetermined) {
                    w.unchecked_ascents.push_back(j);
                    break;
                }
            }
        }
        std::optional<Poly> best;
        for (const auto& g : *L) {
            Poly r = reduce_by(g, w.reduced);
            if (r.is_zero()) continue;
            if (!best || GrlexLess{}(best->leading_monomial(), r.leading_monomial())) best = r;
        }
        if (!best && j >= 2) {
            w.j = j - 1;
            w.lower = prev;
            w.upper = *L;
            std::uint64_t bound = degree_cap(j);
            for (const auto& h : w.upper) {
                auto r = membership_bounded(h, w.lower, bound, limits);
                if (!r.found())
                    throw Aborted("no certificate for " + h.str() + " over index " + std::to_string(w.j) + ": " +
                                  r.reason);
                w.certificates.push_back(r.cert);
            }
            w.bound = m_star_outcome(D, n, budget);
            check_bound(w.bound, w.j, "Hilbert chain");
            return w;
        }
        if (best) w.reduced.push_back(*best);
        prev = *L;
    }
    throw Aborted("scan cap " + std::to_string(scan_cap) + " reached before the chain stabilized");
}

Stream<std::vector<Poly>> staircase_chain(std::uint32_t L) {
    return [L](std::uint64_t i) -> std::optional<std::vector<Poly>> {
        std::uint64_t k = std::min<std::uint64_t>(i, L);
        std::vector<Poly> gens;
        for (std::uint32_t t = 0; t < k; ++t) gens.push_back(Poly::monomial(2, {L - t, t}));
        return gens;
    };
}

}  // namespace effdiff
