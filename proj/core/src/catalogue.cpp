#include "effdiff/catalogue.hpp"

#include <algorithm>
#include <map>

#include "effdiff/errors.hpp"
#include "effdiff/multiset.hpp"

namespace effdiff {

using namespace arith;

namespace {

Val lower_of(const MonotoneFn& g, const Val& x) { return g.inflationary() ? Val(x.v, false) : Val(0, false); }

bool is_one(const Ordinal& a) { return a.terms().size() == 1 && a.terms()[0].exp.is_zero() && a.terms()[0].coef == 1; }

Val dec(const Val& x) { return Val(x.v > 0 ? BigNat(x.v - 1) : BigNat(0), x.exact); }

// Loop length, or a value past the step cap so that the loop runs out of budget.
std::uint64_t loop_count(const Val& x, const Budget& bud) {
    if (!x.v.fits_ulong_p() || x.v.get_ui() > bud.max_steps) return bud.max_steps + 1;
    return x.v.get_ui();
}

void need(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

Val iterate(const MonotoneFn& g, const Ordinal& alpha, const Val& b, Budget& bud) {
    if (!b.exact) {
        Val r = iterate(g, alpha, Val(b.v), bud);
        return g.inflationary() ? Val(r.v, false) : Val(0, false);
    }
    // The terms of the current index, updated in place: alpha[x] only touches the last term.
    std::vector<OrdTerm> a = alpha.terms();
    Val x = b;
    while (!a.empty()) {
        OrdTerm& t = a.back();
        if (g.is_successor()) {
            if (t.exp.is_zero()) {
                x = add(x, Val(t.coef), bud);
                a.pop_back();
                if (!x.exact) return lower_of(g, x);
                continue;
            }
            if (is_one(t.exp)) {
                // G^{omega*k}(x) = 2^k (x+1) - 1
                Val p = mul(pow(Val(2), Val(t.coef), bud), add(x, Val(1), bud), bud);
                if (!p.exact) return lower_of(g, p);
                x = Val(p.v - 1);
                a.pop_back();
                continue;
            }
        }
        if (!bud.spend()) return lower_of(g, x);
        Ordinal e = t.exp;
        if (t.coef > 1) t.coef -= 1;
        else a.pop_back();
        if (!e.is_zero() && x.v > 0) a.push_back({e.fundamental(x.v), x.v});
        x = g(x, bud);
        if (!x.exact) return lower_of(g, x);
    }
    return x;
}

Val frak_d(const Val& n, const Val& b, Budget& bud) { return pow(mul(Val(2), b, bud), pow(Val(2), n, bud), bud); }

Val frak_e(const Val& n, const Val& b, Budget& bud) {
    need(n.v >= 1, "e(n, b) needs n >= 1");
    Val n1 = dec(n);
    Val dn = frak_d(n1, b, bud);
    Val top = add(pow(add(b, dn, bud), n1, bud), Val(1), bud);
    return add(add(mul(pow(Val(2), top, bud), b, bud), b, bud), dn, bud);
}

Val zeta0(const Val& n, const Val& d, Budget& bud) { return choose_sum(frak_d(n, d, bud), n, bud); }

Val zeta1(const Val& n, const Val& d, const Val& b, Budget& bud) {
    return mul(add(choose_sum(b, n, bud), Val(2), bud), zeta0(n, d, bud), bud);
}

Val zeta2(const Val& n, const Val& d, const Val& b, Budget& bud) {
    Val z = zeta1(n, d, b, bud);
    return pow(add(z, Val(1), bud), pow2_minus_one(z, bud), bud);
}

namespace {

Val upsilon_from(const Val& n1, const Val& p, const Val& d, Budget& bud) {
    return mul(zeta1(n1, p, d, bud), zeta2(n1, p, d, bud), bud);
}

}  // namespace

Val upsilon(const Val& n, const Val& d, Budget& bud) {
    need(n.v >= 2, "upsilon(n, d) needs n >= 2");
    Val n1 = dec(n);
    return upsilon_from(n1, frak_p(n1, d, bud), d, bud);
}

Val frak_p(const Val& n, const Val& d, Budget& bud) {
    need(n.v >= 1, "p_n(d) needs n >= 1");
    Val p = d;
    std::uint64_t top = loop_count(n, bud);
    for (std::uint64_t k = 2; k <= top; ++k) {
        if (!bud.spend() || !p.exact) return Val(p.v, false);
        Val u = upsilon_from(Val(k - 1), p, d, bud);
        p = max(mul(mul(Val(2), choose_sum(u, Val(k), bud), bud), u, bud), frak_e(Val(k - 1), d, bud));
    }
    return p;
}

Val frak_g(const Val& b, const Val& d, Budget& bud) { return mul(d, pow(add(Val(1), b, bud), d, bud), bud); }

namespace {

// F_x(b) = F(p_x(b))
MonotoneFn shifted_F(const MonotoneFn& F, const Val& x) {
    return MonotoneFn(
        F.name() + "_" + x.v.get_str(), [F, x](const Val& b, Budget& bud) { return F(frak_p(x, b, bud), bud); },
        F.inflationary());
}

}  // namespace

Val frak_u(const MonotoneFn& F, const Val& x, Budget& bud) {
    MonotoneFn Fx = shifted_F(F, x);
    MonotoneFn powers("i -> F_x^i(x)",
                      [Fx, x](const Val& i, Budget& b) { return iterate(Fx, Ordinal(i.v), x, b); },
                      Fx.inflationary());
    Val count = frak_m_star(powers, x, bud);
    Val r = iterate(Fx, Ordinal(count.v), x, bud);
    if (!count.exact) return lower_of(Fx, r);
    return r;
}

Val frak_u_plus(const MonotoneFn& F, const Val& b, Budget& bud) {
    Val inner = add(mul(mul(Val(2), b, bud), choose_sum(b, b, bud), bud), Val(1), bud);
    return max(frak_u(F, b, bud), frak_d(add(b, Val(1), bud), inner, bud));
}

Val frak_N(const MonotoneFn& F, const Val& b, Budget& bud) {
    Val u = frak_u_plus(F, b, bud);
    return add(frak_d(u, u, bud), u, bud);
}

Val frak_f(const MonotoneFn& F, const Val& b, Budget& bud) {
    Val u = frak_u_plus(F, b, bud);
    Val N = add(frak_d(u, u, bud), u, bud);
    return add(frak_d(u, mul(choose_sum(N, b, bud), u, bud), bud), N, bud);
}

Val frak_z(const Val& k, const Val& d0, const Val& b, Budget& bud) {
    Val d = d0;
    std::uint64_t steps = loop_count(k, bud);
    Val two_b = mul(Val(2), b, bud);
    Val central = choose_sum(b, b, bud);
    for (std::uint64_t s = 0; s < steps; ++s) {
        if (!bud.spend() || !d.exact) return Val(d.v, false);
        Val bd1 = dec(add(b, d, bud));
        Val G = frak_g(bd1, max(bd1, two_b), bud);
        Val d1 = add(d, Val(1), bud);
        Val inner = add(mul(mul(add(G, d1, bud), central, bud), two_b, bud), d, bud);
        d = add(add(frak_d(add(b, d, bud), inner, bud), G, bud), d1, bud);
    }
    return d;
}

Val F_char(const Val& c, const Val& k, Budget& bud) {
    return frak_z(add(k, Val(1), bud), k, frak_g(c, k, bud), bud);
}

namespace {

Val cohere_step(const Val& D, const Val& n, const Val& m, Budget& bud) {
    Val m1 = dec(m);
    Val w = mul(mul(choose_sum(mul(Val(2), D, bud), m1, bud), n, bud), add(D, Val(1), bud), bud);
    return frak_g(D, w, bud);
}

MonotoneFn char_fn(const Val& c) {
    return MonotoneFn(
        "F_char_" + c.v.get_str(), [c](const Val& k, Budget& bud) { return F_char(c, k, bud); }, true);
}

template <class Step>
Val unroll(const Val& b, const Val& i, Budget& bud, Step step) {
    Val D = b;
    std::uint64_t steps = loop_count(i, bud);
    for (std::uint64_t s = 0; s < steps; ++s) {
        if (!bud.spend() || !D.exact) return Val(D.v, false);
        D = step(D);
    }
    return D;
}

}  // namespace

Val D_sat(const Val& b, const Val&, const Val&, const Val& i, Budget& bud) {
    return unroll(b, i, bud, [&](const Val& D) { return frak_g(D, b, bud); });
}

Val D_cohere(const Val& b, const Val& n, const Val& m, const Val& i, Budget& bud) {
    need(m.v >= 1, "D_cohere needs m >= 1");
    return unroll(b, i, bud, [&](const Val& D) { return cohere_step(D, n, m, bud); });
}

Val D_char(const Val& b, const Val& n, const Val& m, const Val& i, Budget& bud) {
    need(m.v >= 1, "D_char needs m >= 1");
    return unroll(b, i, bud, [&](const Val& D) {
        MonotoneFn Fc = char_fn(D);
        Val t = cohere_step(D, n, m, bud);
        t = max(t, frak_p(D, frak_u(Fc, D, bud), bud));
        return max(t, frak_f(Fc, D, bud));
    });
}

namespace {

DiffShape shape_of(const Val& n, const Val& m) {
    need(n.v >= 1 && n.v <= 64 && m.v <= 16, "h needs 1 <= n <= 64 and m <= 16");
    return DiffShape{static_cast<std::uint32_t>(n.v.get_ui()), static_cast<std::uint32_t>(m.v.get_ui())};
}

template <class Dfn>
Val stopped_at_h(const Val& b, const Val& n, const Val& m, Budget& bud, Dfn Dseq) {
    MonotoneFn D("D", [b, n, m, Dseq](const Val& i, Budget& bb) { return Dseq(b, n, m, i, bb); });
    Val stop = frak_h(shape_of(n, m), D, {}, bud);
    Val r = Dseq(b, n, m, stop, bud);
    if (!stop.exact) r.exact = false;
    return r;
}

}  // namespace

Val i_sat(const Val& b, const Val& n, const Val& m, Budget& bud) { return stopped_at_h(b, n, m, bud, D_sat); }
Val i_cohere(const Val& b, const Val& n, const Val& m, Budget& bud) {
    return stopped_at_h(b, n, m, bud, D_cohere);
}
Val i_char(const Val& b, const Val& n, const Val& m, Budget& bud) { return stopped_at_h(b, n, m, bud, D_char); }

Val frak_k(const Val& n, const Val& d, Budget& bud) {
    Val r = iterate(MonotoneFn::successor(), Ordinal::omega_pow(Ordinal(BigNat(n.v + 8))), d, bud);
    if (!n.exact) r.exact = false;
    return r;
}

Ordinal frak_j_index(std::uint64_t n, std::uint64_t m) {
    Ordinal wm = Ordinal::omega_pow(Ordinal(m));
    Ordinal inner = Ordinal::omega_pow(wm, n);  // omega^{omega^m} * n
    Ordinal first = Ordinal::omega_pow(Ordinal::omega_pow(inner), 2);
    Ordinal second_exp = left_sum(Ordinal::omega_pow(Ordinal(m), 2 * n), Ordinal(2));
    return left_sum(first, Ordinal::omega_pow(second_exp, 3));
}

Val frak_j(const Val& n, const Val& m, const Val& i0, const Val& d, const MonotoneFn& F, Budget& bud) {
    need(n.v.fits_ulong_p() && m.v.fits_ulong_p(), "j: n and m must be small");
    Ordinal idx = frak_j_index(n.v.get_ui(), m.v.get_ui());
    Val r = iterate(F, idx, max(max(d, n), i0), bud);
    if (!n.exact || !m.exact) r.exact = false;
    return r;
}

// ---- h

namespace {

bool dominated(const std::vector<std::vector<std::uint32_t>>& es, const std::vector<std::uint32_t>& x) {
    for (const auto& e : es) {
        bool le = true;
        for (std::size_t s = 0; s < e.size() && le; ++s) le = e[s] <= x[s];
        if (le) return true;
    }
    return false;
}

// No derivative ranked after the last leader escapes every earlier leader.
bool maximal(const std::vector<Derivative>& leaders, const DiffShape& shape) {
    std::uint64_t cut = leaders.empty() ? 0 : rank_index(leaders.back(), shape);
    for (std::uint32_t i = 1; i <= shape.n; ++i) {
        std::vector<std::vector<std::uint32_t>> es;
        for (const auto& u : leaders)
            if (u.indet == i) es.push_back(u.exps);
        if (es.empty()) return false;
        // The residual set is finite iff each axis holds a pure power.
        std::vector<std::uint32_t> bound(shape.m);
        for (std::uint32_t s = 0; s < shape.m; ++s) {
            bool found = false;
            for (const auto& e : es) {
                bool pure = true;
                for (std::uint32_t t = 0; t < shape.m; ++t)
                    if (t != s && e[t] != 0) pure = false;
                if (pure && (!found || e[s] < bound[s])) {
                    bound[s] = e[s];
                    found = true;
                }
            }
            if (!found) return false;
        }
        std::vector<std::uint32_t> x(shape.m, 0);
        for (;;) {
            if (!dominated(es, x) && rank_index(Derivative{i, x}, shape) > cut) return false;
            std::uint32_t s = 0;
            while (s < shape.m && ++x[s] >= bound[s]) x[s++] = 0;
            if (s == shape.m) break;
        }
    }
    return true;
}

struct HSearch {
    DiffShape shape;
    const MonotoneFn& D;
    Budget& bud;
    std::map<std::pair<BigNat, std::vector<std::uint64_t>>, BigNat> memo;

    Val Dat(const BigNat& off, const BigNat& i) { return D(Val(BigNat(off + i)), bud); }

    Val h(const BigNat& off, const std::vector<Derivative>& leaders) {
        if (maximal(leaders, shape)) return Val(1);
        std::vector<std::uint64_t> key;
        for (const auto& u : leaders) key.push_back(rank_index(u, shape));
        auto memo_key = std::make_pair(off, key);
        if (auto it = memo.find(memo_key); it != memo.end()) return Val(it->second);

        Val top = Dat(off, 1);
        if (!top.exact) return Val(1, false);
        std::uint64_t last = key.empty() ? 0 : key.back();
        BigNat w = 1;
        for (BigNat u = top.v; u > last; --u) {
            if (!bud.spend()) return Val(w, false);
            if (!u.fits_ulong_p()) continue;  // rank indices past 2^64 are unreachable anyway
            std::vector<Derivative> next = leaders;
            next.push_back(derivative_at(u.get_ui(), shape));
            if (!is_bad_leader(next, shape)) continue;
            Val kmax = Dat(off, w);
            if (!kmax.exact) return Val(w, false);
            BigNat v = w;
            for (BigNat k = kmax.v; k > 0; --k) {
                if (!bud.spend()) return Val(v, false);
                Val sub = h(off + v, next);
                v += sub.v;
                if (!sub.exact) return Val(v, false);
                if (mpz_sizeinbase(v.get_mpz_t(), 2) > bud.max_bits) return Val(v, false);
            }
            w = v;
        }
        memo.emplace(memo_key, w);
        return Val(w);
    }
};

}  // namespace

Val frak_h(const DiffShape& shape, const MonotoneFn& D, const std::vector<Derivative>& leaders, Budget& bud) {
    if (!is_bad_leader(leaders, shape)) throw DomainError("h: gamma's leaders must form a bad leader sequence");
    HSearch s{shape, D, bud, {}};
    return s.h(0, leaders);
}

// ---- catalogue table

namespace {

struct Signature {
    const char* name;
    // N numeric, F function; a trailing '*' repeats the last kind.
    const char* kinds;
    bool cli;
};

const Signature kSignatures[] = {
    {"d_n", "NN", true},        {"e", "NN", true},         {"zeta0", "NN", true},
    {"zeta1", "NNN", true},     {"zeta2", "NNN", true},    {"p_n", "NN", true},
    {"g", "NN", true},          {"m", "FNN*", true},       {"m_star", "FN", true},
    {"u_F", "FN", true},        {"u_plus_F", "FN", true},  {"f_F", "FN", true},
    {"h", "NNFN*", true},       {"D_sat", "NNNN", true},   {"i_sat", "NNN", true},
    {"D_cohere", "NNNN", true}, {"i_cohere", "NNN", true}, {"z_k", "NNN", true},
    {"F_char", "NN", true},     {"D_char", "NNNN", true},  {"i_char", "NNN", true},
    {"k", "NN", true},          {"j", "NNNNF", true},      {"upsilon", "NN", false},
    {"rho", "NN", false},       {"N_F", "FN", false},
};

const Signature* find_signature(const std::string& name) {
    for (const auto& s : kSignatures)
        if (name == s.name) return &s;
    return nullptr;
}

bool arity_ok(const Signature& s, std::size_t count) {
    std::string k = s.kinds;
    if (!k.empty() && k.back() == '*') return count + 1 >= k.size() - 1;
    return count == k.size();
}

char kind_at(const Signature& s, std::size_t i) {
    std::string k = s.kinds;
    if (!k.empty() && k.back() == '*') {
        if (i + 2 >= k.size()) return k[k.size() - 2];
        return k[i];
    }
    return k[i];
}

using E = BoundExpr;

E C(unsigned long v) { return E::constant(v); }
E add(E a, E b) { return E::add(std::move(a), std::move(b)); }
E mul(E a, E b) { return E::mul(std::move(a), std::move(b)); }
E call(const char* n, std::vector<E> a) { return E::call(n, std::move(a)); }

E minus1(const E& x) {
    if (x.is_const()) return E::constant(x.value() > 0 ? BigNat(x.value() - 1) : BigNat(0));
    return E::sub(x, C(1));
}

bool is_const(const E& x, unsigned long v) { return x.is_const() && x.value() == v; }

}  // namespace

std::string catalogue_kinds(const std::string& name) {
    const Signature* s = find_signature(name);
    if (!s) throw DomainError("unknown bound '" + name + "'");
    return s->kinds;
}

const std::vector<std::string>& catalogue_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : kSignatures)
            if (s.cli) out.emplace_back(s.name);
        return out;
    }();
    return names;
}

BoundExpr catalogue(const std::string& name, std::vector<BoundExpr> args) {
    const Signature* s = find_signature(name);
    if (!s) throw DomainError("unknown catalogue entry '" + name + "'");
    if (!arity_ok(*s, args.size()))
        throw DomainError("wrong number of arguments for '" + name + "': " + std::to_string(args.size()));
    return BoundExpr::call(name, std::move(args));
}

std::optional<BoundExpr> unfold(const BoundExpr& e) {
    if (e.kind() != BoundExpr::Kind::Call) return std::nullopt;
    const std::string& f = e.name();
    const auto& a = e.args();
    const Signature* s = find_signature(f);
    if (!s || !arity_ok(*s, a.size())) return std::nullopt;
    auto two = [](E x) { return mul(C(2), std::move(x)); };
    if (f == "d_n") return E::pow(two(a[1]), E::pow(C(2), a[0]));
    if (f == "e") {
        E n1 = minus1(a[0]), b = a[1];
        E dn = call("d_n", {n1, b});
        E top = add(E::pow(add(b, dn), n1), C(1));
        return add(add(mul(E::pow(C(2), top), b), b), dn);
    }
    if (f == "zeta0") return E::binom(add(a[0], call("d_n", {a[0], a[1]})), a[0]);
    if (f == "zeta1") return mul(add(E::binom(add(a[2], a[0]), a[0]), C(2)), call("zeta0", {a[0], a[1]}));
    if (f == "zeta2") {
        E z = call("zeta1", {a[0], a[1], a[2]});
        return E::pow(add(z, C(1)), E::sub(E::pow(C(2), z), C(1)));
    }
    if (f == "upsilon") {
        E n1 = minus1(a[0]);
        E p = call("p_n", {n1, a[1]});
        return mul(call("zeta1", {n1, p, a[1]}), call("zeta2", {n1, p, a[1]}));
    }
    if (f == "rho" || f == "p_n") {
        if (f == "p_n" && is_const(a[0], 1)) return a[1];
        E u = call("upsilon", {a[0], a[1]});
        return E::max(mul(two(E::binom(add(u, a[0]), a[0])), u), call("e", {minus1(a[0]), a[1]}));
    }
    if (f == "g") return mul(a[1], E::pow(add(C(1), a[0]), a[1]));
    if (f == "m_star") {
        E D1 = E::fn("y", add(E::apply(a[0], E::var("y")), C(1)));
        return add(call("m", {D1, C(0), a[1]}), C(1));
    }
    if (f == "u_F") {
        E Fx = E::fn("y", E::apply(a[0], call("p_n", {a[1], E::var("y")})));
        E powers = E::fn("z", E::repeat(Fx, E::var("z"), a[1]));
        return E::repeat(Fx, call("m_star", {powers, a[1]}), a[1]);
    }
    if (f == "u_plus_F") {
        E b = a[1];
        E inner = add(mul(two(b), E::binom(two(b), b)), C(1));
        return E::max(call("u_F", {a[0], b}), call("d_n", {add(b, C(1)), inner}));
    }
    if (f == "N_F") {
        E u = call("u_plus_F", {a[0], a[1]});
        return add(call("d_n", {u, u}), u);
    }
    if (f == "f_F") {
        E u = call("u_plus_F", {a[0], a[1]});
        E N = call("N_F", {a[0], a[1]});
        return add(call("d_n", {u, mul(E::binom(add(N, a[1]), a[1]), u)}), N);
    }
    if (f == "z_k") {
        if (is_const(a[0], 0)) return a[1];
        E d = a[1], b = a[2];
        E bd1 = minus1(add(b, d));
        E G = call("g", {bd1, E::max(bd1, two(b))});
        E d1 = add(d, C(1));
        E inner = add(mul(mul(add(G, d1), E::binom(two(b), b)), two(b)), d);
        E next = add(add(call("d_n", {add(b, d), inner}), G), d1);
        return call("z_k", {minus1(a[0]), next, b});
    }
    if (f == "F_char") return call("z_k", {add(a[1], C(1)), a[1], call("g", {a[0], a[1]})});
    if (f == "D_sat" || f == "D_cohere" || f == "D_char") {
        if (is_const(a[3], 0)) return a[0];
        E D = call(f.c_str(), {a[0], a[1], a[2], minus1(a[3])});
        E coh = call("g", {D, mul(mul(E::binom(add(two(D), minus1(a[2])), minus1(a[2])), a[1]), add(D, C(1)))});
        if (f == "D_sat") return call("g", {D, a[0]});
        if (f == "D_cohere") return coh;
        E Fc = E::fn("y", call("F_char", {D, E::var("y")}));
        return E::max(E::max(coh, call("p_n", {D, call("u_F", {Fc, D})})), call("f_F", {Fc, D}));
    }
    if (f == "i_sat" || f == "i_cohere" || f == "i_char") {
        std::string seq = "D_" + f.substr(2);
        E Dfn = E::fn("y", call(seq.c_str(), {a[0], a[1], a[2], E::var("y")}));
        return call(seq.c_str(), {a[0], a[1], a[2], call("h", {a[1], a[2], Dfn})});
    }
    if (f == "k") {
        if (!a[0].is_const()) return std::nullopt;
        return E::iterate(E::var("G"), Ordinal::omega_pow(Ordinal(BigNat(a[0].value() + 8))), a[1]);
    }
    if (f == "j") {
        if (!a[0].is_const() || !a[1].is_const() || !a[0].value().fits_ulong_p() || !a[1].value().fits_ulong_p())
            return std::nullopt;
        Ordinal idx = frak_j_index(a[0].value().get_ui(), a[1].value().get_ui());
        return E::iterate(a[4], idx, E::max(E::max(a[3], a[0]), a[2]));
    }
    return std::nullopt;
}

Val catalogue_call(const std::string& name, const std::vector<BoundExpr>& args, const EvalEnv& env,
                   Budget& bud) {
    const Signature* s = find_signature(name);
    if (!s) {
        auto it = env.fns.find(name);
        if (it != env.fns.end() && args.size() == 1) return it->second(eval(args[0], env, bud), bud);
        throw DomainError("unknown catalogue entry '" + name + "'");
    }
    if (!arity_ok(*s, args.size()))
        throw DomainError("wrong number of arguments for '" + name + "': " + std::to_string(args.size()));
    std::vector<Val> v;
    std::vector<MonotoneFn> fns;
    bool exact = true;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (kind_at(*s, i) == 'F') {
            fns.push_back(function_arg(args[i], env));
            v.emplace_back(0UL);
        } else {
            v.push_back(eval(args[i], env, bud));
            exact = exact && v.back().exact;
        }
    }
    Val r;
    if (name == "d_n") r = frak_d(v[0], v[1], bud);
    else if (name == "e") r = frak_e(v[0], v[1], bud);
    else if (name == "zeta0") r = zeta0(v[0], v[1], bud);
    else if (name == "zeta1") r = zeta1(v[0], v[1], v[2], bud);
    else if (name == "zeta2") r = zeta2(v[0], v[1], v[2], bud);
    else if (name == "upsilon") r = upsilon(v[0], v[1], bud);
    else if (name == "rho") {
        need(v[0].v >= 2, "rho(n, d) needs n >= 2");
        Val u = upsilon(v[0], v[1], bud);
        r = arith::max(arith::mul(arith::mul(Val(2), choose_sum(u, v[0], bud), bud), u, bud),
                       frak_e(dec(v[0]), v[1], bud));
    } else if (name == "p_n") r = frak_p(v[0], v[1], bud);
    else if (name == "g") r = frak_g(v[0], v[1], bud);
    else if (name == "m") {
        Multiset tau;
        for (std::size_t i = 2; i < v.size(); ++i) tau.add(v[i].v);
        r = frak_m(tau, fns[0], v[1], bud);
    } else if (name == "m_star") r = frak_m_star(fns[0], v[1], bud);
    else if (name == "u_F") r = frak_u(fns[0], v[1], bud);
    else if (name == "u_plus_F") r = frak_u_plus(fns[0], v[1], bud);
    else if (name == "N_F") r = frak_N(fns[0], v[1], bud);
    else if (name == "f_F") r = frak_f(fns[0], v[1], bud);
    else if (name == "h") {
        DiffShape shape = shape_of(v[0], v[1]);
        std::vector<Derivative> leaders;
        for (std::size_t i = 3; i < v.size(); ++i) {
            need(v[i].v >= 1 && v[i].v.fits_ulong_p(), "h: leaders are given by rank index");
            leaders.push_back(derivative_at(v[i].v.get_ui(), shape));
        }
        r = frak_h(shape, fns[0], leaders, bud);
    } else if (name == "D_sat") r = D_sat(v[0], v[1], v[2], v[3], bud);
    else if (name == "i_sat") r = i_sat(v[0], v[1], v[2], bud);
    else if (name == "D_cohere") r = D_cohere(v[0], v[1], v[2], v[3], bud);
    else if (name == "i_cohere") r = i_cohere(v[0], v[1], v[2], bud);
    else if (name == "z_k") r = frak_z(v[0], v[1], v[2], bud);
    else if (name == "F_char") r = F_char(v[0], v[1], bud);
    else if (name == "D_char") r = D_char(v[0], v[1], v[2], v[3], bud);
    else if (name == "i_char") r = i_char(v[0], v[1], v[2], bud);
    else if (name == "k") r = frak_k(v[0], v[1], bud);
    else if (name == "j") r = frak_j(v[0], v[1], v[2], v[3], fns[0], bud);
    if (!exact) r.exact = false;
    return r;
}

}  // namespace effdiff
