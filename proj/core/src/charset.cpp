#include "effdiff/charset.hpp"

#include <set>
#include <sstream>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

std::string oracle_key(const DiffPoly& f) {
    if (f.is_zero()) return "0";
    Rational lc = f.poly().leading_coeff();
    return f.scale(1 / lc).str();
}

DiffOracle table_oracle(const std::vector<std::pair<DiffPoly, bool>>& entries) {
    std::map<std::string, bool> table;
    for (const auto& [f, member] : entries) table[oracle_key(f)] = member;
    return [table = std::move(table)](const DiffPoly& f) -> std::optional<bool> {
        auto it = table.find(oracle_key(f));
        if (it == table.end()) return std::nullopt;
        return it->second;
    };
}

DiffOracle remainder_oracle(DiffPolys set) {
    return [set = std::move(set)](const DiffPoly& f) -> std::optional<bool> {
        return pseudodivide(f, set).remainder.is_zero();
    };
}

bool RecordingOracle::ask(const DiffPoly& f, const std::string& purpose) {
    std::string key = oracle_key(f);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto a = inner_(f);
    calls_.push_back({f, a, purpose});
    if (!a) throw Aborted("oracle answered unknown for " + f.str(), transcript());
    memo_.emplace(key, *a);
    return *a;
}

std::string RecordingOracle::transcript(const IndetNames& names) const {
    std::ostringstream os;
    for (const auto& c : calls_)
        os << c.purpose << ": " << c.query.str(names) << " -> " << (c.answer ? (*c.answer ? "in" : "out") : "unknown")
           << "\n";
    return os.str();
}

std::vector<std::pair<DiffPoly, bool>> RecordingOracle::table() const {
    std::vector<std::pair<DiffPoly, bool>> out;
    for (const auto& c : calls_)
        if (c.answer) out.emplace_back(c.query, *c.answer);
    return out;
}

namespace {

std::string set_str(const DiffPolys& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
    return out + "}";
}

// Variables and coefficient-1 monomials of the set, partially reduced with respect to it.
DiffPolys candidates(const DiffPolys& cur) {
    DiffPolys out;
    std::set<std::string> seen;
    auto add = [&](const DiffPoly& c) {
        if (c.is_constant() || !partially_reduced(c, cur)) return;
        if (seen.insert(oracle_key(c)).second) out.push_back(c);
    };
    for (const auto& f : cur) {
        for (auto idx : f.indices()) add(DiffPoly::of_index(f.shape(), idx));
        for (const auto& [m, c] : f.poly().terms()) add(DiffPoly(f.shape(), Poly::monomial(m.size(), m)));
    }
    return out;
}

}  // namespace

CharSetResult char_set(const DiffPolys& input, const DiffOracle& oracle, const CharSetOptions& opt) {
    for (const auto& f : input)
        if (f.is_constant()) throw DomainError("char_set: constant in the input");
    RecordingOracle P(oracle);
    CharSetResult res;
    auto abort = [&](const std::string& why, const DiffPolys& partial) {
        throw Aborted("char_set: " + why + "; partial set " + set_str(partial), P.transcript());
    };
    for (const auto& f : input)
        if (!P.ask(f, "input")) abort("oracle places an input outside P", {});

    DiffPolys cur = min_rank_subset(input);
    res.start = cur;
    auto step = [&](int repair, const DiffPolys& added) {
        DiffPolys pool = cur;
        pool.insert(pool.end(), added.begin(), added.end());
        DiffPolys next = min_rank_subset(pool);
        if (compare_sets(next, cur) >= 0) throw ContractViolation("char_set: rank did not decrease");
        check_cardinality(next);
        cur = std::move(next);
        res.steps.push_back({repair, added, cur});
    };
    auto nonconstant_remainder = [&](const DiffPoly& r) {
        if (r.is_constant()) abort("a nonzero constant lies in P", cur);
        return r;
    };

    for (std::uint64_t round = 0;; ++round) {
        if (round >= opt.max_rounds) abort("round cap reached", cur);

        DiffPolys extra;
        for (const auto& p : s_pairs(cur)) {
            auto r = pseudodivide(p.delta, cur).remainder;
            if (!r.is_zero()) extra.push_back(nonconstant_remainder(r));
        }
        if (!extra.empty()) {
            step(1, extra);
            continue;
        }

        std::optional<DiffPoly> rem;
        for (const auto& f : input) {
            auto r = pseudodivide(f, cur).remainder;
            if (!r.is_zero()) {
                rem = nonconstant_remainder(r);
                break;
            }
        }
        if (rem) {
            step(2, {*rem});
            continue;
        }

        std::optional<DiffPoly> factor;
        for (const auto& f : cur) {
            for (const auto& u : {f.initial(), f.separant()}) {
                if (u.is_constant()) continue;
                if (P.ask(u, "initial/separant")) {
                    factor = u;
                    break;
                }
            }
            if (factor) break;
        }
        if (factor) {
            step(3, {*factor});
            continue;
        }

        DiffPolys cands = candidates(cur);
        std::size_t pairs = cands.size() * (cands.size() + 1) / 2;
        if (pairs > opt.witness_pool_size)
            abort("witness pool of " + std::to_string(pairs) + " pairs exceeds the cap", cur);
        std::vector<DiffPoly> in_p;
        for (std::size_t a = 0; a < cands.size() && !rem; ++a)
            for (std::size_t b = a; b < cands.size() && !rem; ++b) {
                DiffPoly prod = cands[a] * cands[b];
                if (!P.ask(prod, "primality")) continue;
                bool fa = P.ask(cands[a], "primality");
                bool fb = a == b ? fa : P.ask(cands[b], "primality");
                if (!fa && !fb)
                    abort("oracle puts " + prod.str() + " in P but neither factor", cur);
                const DiffPoly& f = fa ? cands[a] : cands[b];
                in_p.push_back(f);
                in_p.push_back(prod);
                auto r = pseudodivide(f, cur).remainder;
                if (!r.is_zero()) rem = nonconstant_remainder(r);
            }
        if (rem) {
            step(4, {*rem});
            continue;
        }

        for (const auto& c : in_p) {
            auto r = pseudodivide(c, cur).remainder;
            if (r.is_zero()) continue;
            nonconstant_remainder(r);
            for (std::uint64_t k = 1; k <= opt.sat_power && !rem; ++k) {
                auto sm = stratified_membership(r, cur, k, Stratum::saturated, opt.sat_degree, opt.limits);
                if (sm.membership.found()) rem = r;
            }
            if (rem) break;
        }
        if (rem) {
            step(5, {*rem});
            continue;
        }
        break;
    }

    res.sigma = cur;
    res.calls = P.calls();
    for (const auto& f : input) res.input_certificates.push_back(pseudodivide(f, cur));
    std::uint64_t b = 0;
    for (const auto& f : input) b = std::max(b, f.size_bound());
    const auto& shape = input.empty() ? DiffShape{} : input.front().shape();
    res.bound = catalogue("i_char", {BoundExpr::constant(b), BoundExpr::constant(shape.n), BoundExpr::constant(shape.m)});
    Budget bud;
    bud.max_steps = 1U << 16;
    res.bound_value = evaluate(res.bound, {}, bud);
    if (res.bound_value.exact)
        for (const auto& f : cur)
            if (!f.within(res.bound_value.value.get_ui()))
                throw ContractViolation("char_set: output outside the i_char bound");
    return res;
}

bool CharSetResult::verify(const DiffPolys& input, const DiffOracle& oracle) const {
    if (!is_autoreduced(sigma) || !is_reduction_coherent(sigma)) return false;
    for (const auto& f : input)
        if (!pseudodivide(f, sigma).remainder.is_zero()) return false;
    for (const auto& f : sigma) {
        auto a = oracle(f);
        if (!a || !*a) return false;
        for (const auto& u : {f.initial(), f.separant()}) {
            if (u.is_constant()) continue;
            auto q = oracle(u);
            if (!q || *q) return false;
        }
    }
    return true;
}

}  // namespace effdiff
