#include "effdiff/knit.hpp"

#include <sstream>

#include "effdiff/errors.hpp"

namespace effdiff {

Searcher scan_searcher(std::function<bool(const BigNat&)> phi, std::uint64_t max_scan) {
    Searcher s;
    s.phi = phi;
    s.search = [phi, max_scan](const MonotoneFn& F, const BigNat& d, Budget& bud) {
        // Start of the current all-true run, if any.
        BigNat k = d;
        for (std::uint64_t scanned = 0; scanned < max_scan; ++scanned) {
            Val top = F(Val(k), bud);
            if (!top.exact) throw Aborted("F(" + k.get_str() + ") exceeds the evaluation budget");
            BigNat i = k;
            bool ok = true;
            for (; i <= top.v; ++i) {
                if (!phi(i)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return k;
            k = i + 1;
        }
        throw Aborted("scan cap reached from " + d.get_str());
    };
    return s;
}

namespace {

MonotoneFn floor_at(const MonotoneFn& F, const BigNat& floor) {
    return MonotoneFn(F.name() + "^" + floor.get_str(), [F, floor](const Val& x, Budget& b) {
        return F(x.v >= floor ? x : Val(floor), b);
    });
}

BigNat checked_search(const std::vector<Searcher>& ss, std::size_t j, const MonotoneFn& F, const BigNat& d,
                      Budget& bud) {
    BigNat k = ss[j].search(F, d, bud);
    if (k < d)
        throw ContractViolation("searcher " + std::to_string(j) + " returned " + k.get_str() + " below " +
                                d.get_str());
    return k;
}

BigNat knit_prefix(const std::vector<Searcher>& ss, std::size_t count, const MonotoneFn& F, const BigNat& d,
                   Budget& bud) {
    if (count == 1) return checked_search(ss, 0, F, d, bud);
    std::size_t j0 = count - 1;
    // G(d') = F(k_{j0}(F^{d'}, d')), where F^{d'}(x) = F(max{x, d'}).
    MonotoneFn G("G_" + std::to_string(j0), [&ss, j0, F](const Val& x, Budget& b) {
        BigNat k = checked_search(ss, j0, floor_at(F, x.v), x.v, b);
        return F(Val(k), b);
    });
    BigNat dp = knit_prefix(ss, count - 1, G, d, bud);
    return checked_search(ss, j0, floor_at(F, dp), dp, bud);
}

}  // namespace

BigNat knit(const std::vector<Searcher>& searchers, const MonotoneFn& F, const BigNat& d, Budget& bud) {
    if (searchers.empty()) throw DomainError("knit needs at least one searcher");
    BigNat k = knit_prefix(searchers, searchers.size(), F, d, bud);
    Val top = F(Val(k), bud);
    if (!top.exact) return k;
    for (std::size_t j = 0; j < searchers.size(); ++j) {
        if (!searchers[j].phi) continue;
        for (BigNat i = k; i <= top.v; ++i)
            if (!searchers[j].phi(i))
                throw ContractViolation("searcher " + std::to_string(j) + ": predicate fails at " + i.get_str() +
                                        " in [" + k.get_str() + ", " + top.v.get_str() + "]");
    }
    return k;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

bool DominanceReport::consistent() const {
    for (const auto& s : samples)
        if (s.verdict == Verdict::fails) return false;
    return true;
}

std::string DominanceReport::str() const {
    std::ostringstream os;
    for (const auto& s : samples) {
        bool first = true;
        for (const auto& [k, v] : s.assignment) {
            os << (first ? "" : ",") << k << '=' << v.get_str();
            first = false;
        }
        os << ": lhs " << s.lhs.str() << ", rhs " << s.rhs.str() << ", " << to_string(s.verdict) << '\n';
    }
    return os.str();
}

DominanceReport dominates(const BoundExpr& lhs, const BoundExpr& rhs,
                          const std::vector<std::map<std::string, BigNat>>& samples, const EvalEnv& env,
                          Budget budget) {
    DominanceReport rep;
    for (const auto& a : samples) {
        EvalEnv local = env;
        for (const auto& [k, v] : a) local.vars[k] = v;
        DominanceSample s;
        s.assignment = a;
        s.lhs = evaluate(lhs, local, budget);
        s.rhs = evaluate(rhs, local, budget);
        if (s.lhs.exact && s.rhs.exact) {
            s.verdict = s.lhs.value <= s.rhs.value ? Verdict::holds : Verdict::fails;
        } else if (s.lhs.exact) {
            s.verdict = s.lhs.value <= s.rhs.value ? Verdict::holds : Verdict::inconclusive;
        } else if (s.rhs.exact) {
            s.verdict = s.lhs.value > s.rhs.value ? Verdict::fails : Verdict::inconclusive;
        }
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

}  // namespace effdiff
