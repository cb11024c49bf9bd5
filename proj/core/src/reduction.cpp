#include "effdiff/reduction.hpp"

#include <algorithm>

#include "effdiff/errors.hpp"

namespace effdiff {

bool partially_reduced(const DiffPoly& f, const DiffPoly& g) {
    Derivative mu = g.leader();
    for (auto idx : f.indices())
        if (derivative_at(idx, f.shape()).is_proper_derivative_of(mu)) return false;
    return true;
}

bool reduced(const DiffPoly& f, const DiffPoly& g) {
    return partially_reduced(f, g) && f.degree_in(g.leader_index()) < g.leader_degree();
}

bool reduced(const DiffPoly& f, const DiffPolys& set) {
    return std::all_of(set.begin(), set.end(), [&](const DiffPoly& g) { return reduced(f, g); });
}

bool partially_reduced(const DiffPoly& f, const DiffPolys& set) {
    return std::all_of(set.begin(), set.end(), [&](const DiffPoly& g) { return partially_reduced(f, g); });
}

bool is_autoreduced(const DiffPolys& set) {
    for (const auto& f : set)
        if (f.is_constant()) return false;
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = 0; j < set.size(); ++j)
            if (i != j && !reduced(set[i], set[j])) return false;
    return true;
}

std::vector<Rank> rank_sequence(DiffPolys set) {
    std::vector<Rank> out;
    for (const auto& f : set) out.push_back(f.rank());
    std::sort(out.begin(), out.end());
    return out;
}

int compare_sets(const std::vector<Rank>& a, const std::vector<Rank>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    if (a.size() == b.size()) return 0;
    // A proper extension has lower rank.
    return a.size() > b.size() ? -1 : 1;
}

int compare_sets(const DiffPolys& a, const DiffPolys& b) { return compare_sets(rank_sequence(a), rank_sequence(b)); }

DiffPoly PseudoDivCert::multiplier(const DiffPolys& set) const {
    DiffPoly m = DiffPoly::constant(f.shape(), 1);
    for (std::size_t j = 0; j < set.size() && j < exponents.size(); ++j) {
        auto [k, l] = exponents[j];
        if (k) m *= set[j].initial().pow(k);
        if (l) m *= set[j].separant().pow(l);
    }
    return m;
}

bool PseudoDivCert::verify(const DiffPolys& set) const {
    if (exponents.size() != set.size()) return false;
    DiffPoly rhs(f.shape());
    for (const auto& [gen, c] : cofactors) {
        if (gen.element >= set.size()) return false;
        rhs += c * set[gen.element].apply(gen.theta);
    }
    if (!(multiplier(set) * f - remainder == rhs)) return false;
    return remainder.is_zero() || reduced(remainder, set);
}

std::uint64_t PseudoDivCert::max_exponent() const {
    std::uint64_t e = 0;
    for (auto [k, l] : exponents) e = std::max({e, k, l});
    return e;
}

std::uint64_t PseudoDivCert::max_order() const {
    std::uint64_t o = 0;
    for (const auto& [gen, c] : cofactors) {
        std::uint64_t s = 0;
        for (auto t : gen.theta) s += t;
        o = std::max(o, s);
    }
    return o;
}

namespace {

struct Target {
    std::uint64_t index = 0;
    std::size_t element = 0;
    bool by_separant = false;
};

// Highest-ranking derivative of r that is not reduced; proper derivatives win over
// leader powers at the same derivative (they cannot coincide for one element).
std::optional<Target> find_target(const DiffPoly& r, const DiffPolys& set, const std::vector<Derivative>& leaders,
                                  const std::vector<Rank>& ranks) {
    auto idx = r.indices();
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        Derivative u = derivative_at(*it, r.shape());
        std::optional<Target> power;
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (u.is_proper_derivative_of(leaders[j])) return Target{*it, j, true};
            if (!power && ranks[j].leader == *it && r.degree_in(*it) >= ranks[j].degree) power = Target{*it, j, false};
        }
        if (power) return power;
    }
    return std::nullopt;
}

}  // namespace

PseudoDivCert pseudodivide_unchecked(const DiffPoly& f, const DiffPolys& set) {
    std::vector<Derivative> leaders;
    std::vector<Rank> ranks;
    std::vector<DiffPoly> inits, seps;
    for (const auto& g : set) {
        if (!(g.shape() == f.shape())) throw DomainError("pseudodivision across different rings");
        if (g.is_constant()) throw DomainError("cannot pseudodivide by a constant");
        leaders.push_back(g.leader());
        ranks.push_back(g.rank());
        inits.push_back(g.initial());
        seps.push_back(g.separant());
    }
    PseudoDivCert cert;
    cert.f = f;
    cert.exponents.assign(set.size(), {0, 0});
    DiffPoly r = f;
    std::map<DerivedGen, DiffPoly> derived;
    while (auto t = find_target(r, set, leaders, ranks)) {
        Derivative u = derivative_at(t->index, f.shape());
        DerivedGen gen{t->element, std::vector<std::uint32_t>(f.shape().m, 0)};
        std::uint32_t e = ranks[t->element].degree;
        if (t->by_separant) {
            gen.theta = derivation_between(leaders[t->element], u);
            e = 1;
        }
        auto git = derived.find(gen);
        if (git == derived.end()) git = derived.emplace(gen, set[gen.element].apply(gen.theta)).first;
        const DiffPoly& G = git->second;
        const DiffPoly& M = t->by_separant ? seps[t->element] : inits[t->element];
        for (std::uint32_t d = r.degree_in(t->index); d >= e; d = r.degree_in(t->index)) {
            cert.trace.push_back({t->index, d});
            DiffPoly q = r.coeff_in(t->index, d) * DiffPoly::of_index(f.shape(), t->index, d - e);
            r = M * r - q * G;
            for (auto& [g, c] : cert.cofactors) c = M * c;
            auto [cit, fresh] = cert.cofactors.emplace(gen, q);
            if (!fresh) cit->second += q;
            auto& [k, l] = cert.exponents[t->element];
            ++(t->by_separant ? l : k);
        }
    }
    for (auto it = cert.cofactors.begin(); it != cert.cofactors.end();)
        it = it->second.is_zero() ? cert.cofactors.erase(it) : std::next(it);
    cert.remainder = std::move(r);
    return cert;
}

PseudoDivCert pseudodivide(const DiffPoly& f, const DiffPolys& set) {
    if (!is_autoreduced(set)) throw DomainError("pseudodivision needs an autoreduced set");
    return pseudodivide_unchecked(f, set);
}

mpz_class pseudodiv_bound(std::uint64_t b, std::uint64_t d) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), b + 1, d);
    return p * d;
}

std::optional<DivisionStep> division_step(const DiffPoly& f, const DiffPoly& g) {
    DiffPolys one{g};
    auto t = find_target(f, one, {g.leader()}, {g.rank()});
    if (!t) return std::nullopt;
    DivisionStep s;
    s.by_separant = t->by_separant;
    s.target = derivative_at(t->index, f.shape());
    s.theta = derivation_between(g.leader(), s.target);
    std::uint32_t e = s.by_separant ? 1 : g.leader_degree();
    s.multiplier = s.by_separant ? g.separant() : g.initial();
    s.generator = g.apply(s.theta);
    std::uint32_t d = f.degree_in(t->index);
    DiffPoly lc = f.coeff_in(t->index, d);
    DiffPoly top = lc * DiffPoly::of_index(f.shape(), t->index, d);
    s.quotient = lc * DiffPoly::of_index(f.shape(), t->index, d - e);
    s.rest = f - top;
    s.correction = s.multiplier * top - s.quotient * s.generator;
    s.result = s.multiplier * f - s.quotient * s.generator;
    return s;
}

namespace {

// Splits p into a monomial content (coefficient 1) and the quotient.
std::pair<Monomial, DiffPoly> monomial_content(const DiffPoly& p) {
    const Poly& q = p.poly();
    Monomial c(q.nvars(), 0);
    bool first = true;
    for (const auto& [m, a] : q.terms()) {
        if (first) c = m;
        else
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::min(c[i], m[i]);
        first = false;
    }
    Poly rest(q.nvars());
    for (const auto& [m, a] : q.terms()) {
        Monomial t = m;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] -= c[i];
        rest.add_term(t, a);
    }
    return {c, DiffPoly(p.shape(), std::move(rest))};
}

bool single_term(const DiffPoly& p) { return p.poly().terms().size() == 1; }

std::string factor_str(const DiffPoly& p, const IndetNames& names) {
    return single_term(p) ? p.str(names) : "(" + p.str(names) + ")";
}

}  // namespace

std::string DivisionStep::str(const std::string& gname, const IndetNames& names) const {
    std::string out = (by_separant ? "S_" : "I_") + gname + "*(" + rest.str(names) + ")";
    if (correction.is_zero()) return out;
    // generator = multiplier * target^e + tail, and correction = -quotient * tail.
    std::uint32_t e = by_separant ? 1 : static_cast<std::uint32_t>(generator.degree_in(target));
    DiffPoly tail = generator - multiplier * DiffPoly::of(generator.shape(), target, e);
    DiffPoly prod = quotient * tail;
    if (single_term(prod)) {
        bool neg = prod.poly().terms().begin()->second > 0;
        return out + (neg ? " - " : " + ") + (neg ? prod : -prod).str(names);
    }
    auto [content, prim] = monomial_content(tail);
    std::string cstr = monomial_str(content, names, tail.shape());
    std::string body = factor_str(quotient, names) + "*" + factor_str(prim, names);
    if (!cstr.empty()) body += "*" + cstr;
    return out + " - " + body;
}

DiffPoly delta_s_poly(const DiffPoly& f, const DiffPoly& g, const std::optional<Derivative>& v) {
    Derivative mf = f.leader(), mg = g.leader();
    Derivative target = v ? *v : common_derivative(mf, mg);
    DiffPoly tf = f.apply(derivation_between(mf, target));
    DiffPoly tg = g.apply(derivation_between(mg, target));
    return g.separant() * tf - f.separant() * tg;
}

DiffPoly h_product(const DiffPolys& set) {
    if (set.empty()) return DiffPoly::constant(DiffShape{}, 1);
    DiffPoly h = DiffPoly::constant(set.front().shape(), 1);
    for (const auto& g : set) h *= g.initial() * g.separant();
    return h;
}

}  // namespace effdiff
