#include "effdiff/chains.hpp"

#include <map>
#include <memory>
#include <sstream>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

namespace {

std::uint64_t small_value(const MonotoneFn& f, std::uint64_t x, Budget& bud, const char* what) {
    Val v = f(Val(x), bud);
    if (!v.exact) throw DomainError(std::string(what) + " does not evaluate under the budget");
    return arith::small(v, what);
}

void check_contained(const DiffPolys& set, std::uint64_t cap, std::uint64_t i) {
    for (const auto& f : set)
        if (!f.within(cap))
            throw DomainError("Lambda_" + std::to_string(i) + " element " + f.str() + " is outside K{X}_<=" +
                              std::to_string(cap));
}

}  // namespace

bool AutoreducedChainWitness::verify() const {
    if (index == 0 || ranks.size() != index + 1) return false;
    for (std::uint64_t i = 1; i < index; ++i)
        if (compare_sets(ranks[i], ranks[i - 1]) >= 0) return false;
    return compare_sets(ranks[index], ranks[index - 1]) >= 0;
}

AutoreducedChainWitness autoreduced_chain_witness(const Stream<DiffPolys>& stream, const MonotoneFn& D,
                                                  const DiffShape& shape, std::uint64_t scan_cap, Budget budget) {
    AutoreducedChainWitness w;
    auto fetch = [&](std::uint64_t i) {
        auto s = stream(i);
        if (!s) throw DomainError("stream ended at index " + std::to_string(i) + " before a witness");
        if (!is_autoreduced(*s)) throw DomainError("Lambda_" + std::to_string(i) + " is not autoreduced");
        for (const auto& f : *s)
            if (!(f.shape() == shape)) throw DomainError("Lambda_" + std::to_string(i) + " is in a different ring");
        check_contained(*s, small_value(D, i, budget, "D(i)"), i);
        return rank_sequence(*s);
    };
    w.ranks.push_back(fetch(1));
    for (std::uint64_t i = 1;; ++i) {
        if (i > scan_cap) throw Aborted("autoreduced chain scan cap " + std::to_string(scan_cap) + " reached");
        w.ranks.push_back(fetch(i + 1));
        if (compare_sets(w.ranks[i], w.ranks[i - 1]) >= 0) {
            w.index = i;
            break;
        }
    }
    // The bound counts from Lambda_0; this stream starts at 1, so rebase by one.
    BoundExpr shifted_expr = BoundExpr::fn(
        "i", BoundExpr::apply(D.expr(), BoundExpr::add(BoundExpr::var("i"), BoundExpr::constant(1))));
    MonotoneFn shifted(
        D.name() + "(i+1)", [D](const Val& x, Budget& b) { return D(arith::add(x, Val(1), b), b); },
        D.inflationary(), shifted_expr);
    Val h = frak_h(shape, shifted, {}, budget);
    w.bound.exact = h.exact;
    w.bound.value = h.v;
    if (!h.exact) w.bound.residue = "(h " + shifted_expr.sexpr() + ")";
    if (w.index - 1 < h.v) w.bound_checked = true;
    else if (h.exact)
        throw ContractViolation("autoreduced chain witness " + std::to_string(w.index) +
                                " is past h(D(i+1)) = " + h.v.get_str());
    return w;
}

Stream<DiffPolys> greedy_descending_stream(const MonotoneFn& D) {
    DiffShape shape{1, 1};
    // (v, e) per index; (0, 0) is the empty set.
    auto seq = std::make_shared<std::vector<std::pair<std::uint64_t, std::uint64_t>>>();
    return [D, shape, seq](std::uint64_t i) -> std::optional<DiffPolys> {
        if (i == 0) return std::nullopt;
        Budget bud;
        while (seq->size() < i) {
            std::uint64_t k = seq->size() + 1;
            std::uint64_t cap = small_value(D, k, bud, "D(i)");
            if (seq->empty()) {
                seq->push_back({0, 0});
                continue;
            }
            auto [v, e] = seq->back();
            if (v == 0) seq->push_back({cap, cap});
            else if (e > 1) seq->push_back({v, e - 1});
            else if (v > 1) seq->push_back({v - 1, cap});
            else seq->push_back({v, e});
        }
        auto [v, e] = (*seq)[i - 1];
        if (v == 0) return DiffPolys{};
        return DiffPolys{DiffPoly::of_index(shape, v, static_cast<std::uint32_t>(e))};
    };
}

Stream<DiffPolys> derivative_closure_stream(DiffPolys base) {
    return [base = std::move(base)](std::uint64_t i) -> std::optional<DiffPolys> {
        if (i == 0) return std::nullopt;
        DiffPolys out;
        for (const auto& f : base) {
            std::uint32_t m = f.shape().m;
            std::vector<std::uint32_t> theta(m, 0);
            std::function<void(std::uint32_t, std::uint64_t)> rec = [&](std::uint32_t j, std::uint64_t left) {
                if (j == m) {
                    out.push_back(f.apply(theta));
                    return;
                }
                for (std::uint64_t e = 0; e <= left; ++e) {
                    theta[j] = static_cast<std::uint32_t>(e);
                    rec(j + 1, left - e);
                }
                theta[j] = 0;
            };
            rec(0, i - 1);
        }
        return out;
    };
}

RittOracle pseudodivision_ritt_oracle() {
    return [](const DiffPoly& h, std::uint64_t, const DiffPolys& gens) -> std::optional<bool> {
        DiffPolys nonconst;
        for (const auto& g : gens)
            if (!g.is_constant()) nonconst.push_back(g);
            else if (!g.is_zero()) return true;
        auto ar = autoreduce(nonconst);
        if (ar.unit) return true;
        auto cert = pseudodivide(h, ar.set);
        if (!cert.remainder.is_zero() || !cert.multiplier(ar.set).is_constant()) return std::nullopt;
        return true;
    };
}

RittOracle power_ritt_oracle(std::uint64_t max_power, std::uint64_t degree_cap, SearchLimits limits) {
    return [=](const DiffPoly& h, std::uint64_t, const DiffPolys& gens) -> std::optional<bool> {
        DiffPolys nonconst;
        for (const auto& g : gens)
            if (!g.is_constant()) nonconst.push_back(g);
            else if (!g.is_zero()) return true;
        for (std::uint64_t k = 1; k <= max_power; ++k) {
            auto r = stratified_membership(h.pow(k), nonconst, k, Stratum::order, degree_cap, limits);
            if (r.membership.found()) return true;
        }
        return std::nullopt;
    };
}

RittOracle table_ritt_oracle(const std::vector<RittTableEntry>& entries) {
    std::map<std::pair<std::uint64_t, std::string>, bool> table;
    for (const auto& e : entries) table[{e.i, oracle_key(e.h)}] = e.member;
    return [table = std::move(table)](const DiffPoly& h, std::uint64_t i, const DiffPolys&) -> std::optional<bool> {
        auto it = table.find({i, oracle_key(h)});
        if (it == table.end()) return std::nullopt;
        return it->second;
    };
}

std::string RittChainWitness::transcript(const IndetNames& names) const {
    std::ostringstream os;
    for (const auto& c : calls)
        os << "i=" << c.i << ": " << c.h.str(names) << " -> "
           << (c.answer ? (*c.answer ? "in" : "out") : "unknown") << "\n";
    return os.str();
}

namespace {

DiffPolys joined(const DiffPolys& base, const DiffPolys& extra) {
    DiffPolys out = base;
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

}  // namespace

bool RittChainWitness::verify(const Stream<DiffPolys>& stream, const DiffPolys& base, const RittOracle& oracle) const {
    auto gens = stream(index);
    if (!gens) return false;
    bool any = false;
    for (const auto& c : calls) {
        if (c.i != index) continue;
        any = true;
        auto a = oracle(c.h, index, joined(base, *gens));
        if (!a || !*a) return false;
    }
    return any || calls.empty();
}

RittChainWitness ritt_chain_witness(const DiffPolys& base, const Stream<DiffPolys>& stream, const MonotoneFn& D,
                                    const MonotoneFn& F, std::uint64_t i0, const RittOracle& oracle,
                                    std::uint64_t scan_cap, Budget budget) {
    if (!is_autoreduced(base)) throw DomainError("ritt_chain_witness: base set is not autoreduced");
    RittChainWitness w;
    std::uint64_t d = 0;
    DiffShape shape{};
    for (const auto& f : base) {
        d = std::max(d, f.size_bound());
        shape = f.shape();
    }
    auto fetch = [&](std::uint64_t i) {
        auto s = stream(i);
        if (!s) throw DomainError("stream ended at index " + std::to_string(i));
        check_contained(*s, small_value(D, i, budget, "D(i)"), i);
        if (!s->empty()) shape = s->front().shape();
        return *s;
    };
    auto bound_of = [&] {
        w.bound = catalogue("j", {BoundExpr::constant(shape.n), BoundExpr::constant(shape.m), BoundExpr::constant(i0),
                                  BoundExpr::constant(d), F.expr()});
        Budget b = budget;
        b.max_steps = std::min<std::uint64_t>(b.max_steps, 1U << 16);
        w.bound_value = evaluate(w.bound, {}, b);
    };
    for (std::uint64_t i = i0;; ++i) {
        if (i >= i0 + scan_cap) {
            bound_of();
            throw Aborted("ritt chain scan cap " + std::to_string(scan_cap) + " reached; bound " + w.bound.sexpr(),
                          w.transcript());
        }
        DiffPolys gens = joined(base, fetch(i));
        std::uint64_t fi = small_value(F, i, budget, "F(i)");
        DiffPolys later = fetch(fi);
        bool all = true;
        for (const auto& h : later) {
            auto a = oracle(h, i, gens);
            w.calls.push_back({i, h, a});
            if (!a) {
                bound_of();
                throw Aborted("ritt chain oracle answered unknown for " + h.str() + " at i = " + std::to_string(i),
                              w.transcript());
            }
            if (!*a) {
                all = false;
                break;
            }
        }
        if (all) {
            w.index = i;
            break;
        }
    }
    bound_of();
    if (w.index <= w.bound_value.value) w.bound_checked = true;
    else if (w.bound_value.exact)
        throw ContractViolation("ritt chain witness exceeds j(n, m, i0, d, F)");
    return w;
}

}  // namespace effdiff
