#include "effdiff/membership.hpp"

#include <sstream>

#include "effdiff/errors.hpp"
#include "effdiff/linsolve.hpp"

namespace effdiff {

bool MembershipCert::verify(const Poly& h, const std::vector<Poly>& gens) const {
    Poly sum(h.nvars());
    for (const auto& [i, c] : cofactors) {
        if (i >= gens.size()) return false;
        if (!c.is_zero() && c.total_degree() > degree_bound) return false;
        sum += c * gens[i];
    }
    return sum == h;
}

std::string MembershipCert::str(const Poly::Namer& name) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : cofactors) {
        if (!first) os << "; ";
        first = false;
        os << '[' << i << "] " << c.str(name);
    }
    if (first) os << "(empty)";
    return os.str();
}

MembershipCert make_cert(const Poly& h, const std::vector<Poly>& gens, std::map<std::size_t, Poly> cofactors) {
    MembershipCert cert;
    for (auto it = cofactors.begin(); it != cofactors.end();) {
        if (it->second.is_zero()) it = cofactors.erase(it);
        else {
            cert.degree_bound = std::max(cert.degree_bound, it->second.total_degree());
            ++it;
        }
    }
    cert.cofactors = std::move(cofactors);
    if (!cert.verify(h, gens)) throw ContractViolation("membership certificate does not re-expand to its target");
    return cert;
}

const char* to_string(MemberStatus s) {
    switch (s) {
        case MemberStatus::found: return "found";
        case MemberStatus::not_found: return "not-found";
        case MemberStatus::undetermined: return "undetermined";
    }
    return "?";
}

std::uint64_t vec_degree(const PolyVec& v) {
    std::uint64_t d = 0;
    for (const auto& p : v)
        if (!p.is_zero()) d = std::max(d, p.total_degree());
    return d;
}

namespace {

std::size_t ring_size(const std::vector<PolyVec>& gens, const PolyVec& target) {
    for (const auto& p : target) return p.nvars();
    for (const auto& g : gens)
        for (const auto& p : g) return p.nvars();
    return 0;
}

struct TooLarge : Aborted {
    TooLarge() : Aborted("linear system exceeds the unknown cap") {}
};

// Linear system for sum_j a_j gens[j] = target with deg a_j <= t.
struct LevelSystem {
    std::size_t n;
    std::vector<Monomial> mons;
    std::size_t ncols = 0;
    std::vector<SparseRow> rows;
    std::vector<Rational> rhs;

    LevelSystem(const std::vector<PolyVec>& gens, const PolyVec* target, std::size_t nvars, std::uint64_t t,
                const SearchLimits& limits)
        : n(nvars), mons(monomials_up_to(nvars, t)) {
        ncols = gens.size() * mons.size();
        if (ncols > limits.max_unknowns) throw TooLarge{};
        std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
        auto row = [&](std::size_t l, const Monomial& m) {
            auto [it, fresh] = row_of.try_emplace({l, m}, rows.size());
            if (fresh) {
                rows.emplace_back();
                rhs.emplace_back(0);
            }
            return it->second;
        };
        Monomial prod(n);
        for (std::size_t j = 0; j < gens.size(); ++j)
            for (std::size_t k = 0; k < mons.size(); ++k)
                for (std::size_t l = 0; l < gens[j].size(); ++l)
                    for (const auto& [m, c] : gens[j][l].terms()) {
                        for (std::size_t v = 0; v < n; ++v) prod[v] = m[v] + mons[k][v];
                        rows[row(l, prod)][j * mons.size() + k] += c;
                    }
        if (target)
            for (std::size_t l = 0; l < target->size(); ++l)
                for (const auto& [m, c] : (*target)[l].terms()) rhs[row(l, m)] += c;
    }

    std::vector<Poly> unpack(const std::vector<Rational>& x, std::size_t count) const {
        std::vector<Poly> out(count, Poly(n));
        for (std::size_t j = 0; j < count; ++j)
            for (std::size_t k = 0; k < mons.size(); ++k) out[j].add_term(mons[k], x[j * mons.size() + k]);
        return out;
    }
};

std::optional<std::vector<Poly>> solve_level(const PolyVec& target, const std::vector<PolyVec>& gens,
                                             std::size_t n, std::uint64_t t, const SearchLimits& limits) {
    LevelSystem sys(gens, &target, n, t, limits);
    auto x = solve_linear(sys.rows, sys.rhs, sys.ncols);
    if (!x) return std::nullopt;
    return sys.unpack(*x, gens.size());
}

// Point in {0, +-1, +-2}^n where every generator vanishes and h does not.
std::optional<std::vector<Rational>> separating_zero(const Poly& h, const std::vector<Poly>& gens) {
    std::size_t n = h.nvars();
    if (n > 4) return std::nullopt;
    static const int values[] = {0, 1, -1, 2, -2};
    std::vector<int> idx(n, 0);
    for (;;) {
        std::vector<Rational> pt(n);
        for (std::size_t i = 0; i < n; ++i) pt[i] = values[idx[i]];
        bool zero = true;
        for (const auto& g : gens)
            if (g.evaluate(pt) != 0) {
                zero = false;
                break;
            }
        if (zero && h.evaluate(pt) != 0) return pt;
        std::size_t i = 0;
        while (i < n && ++idx[i] == 5) idx[i++] = 0;
        if (i == n) return std::nullopt;
    }
}

std::string point_str(const std::vector<Rational>& pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? "," : "") + pt[i].get_str();
    return s + ")";
}

}  // namespace

MembershipResult membership_bounded(const Poly& h, const std::vector<Poly>& gens, std::uint64_t D,
                                    const SearchLimits& limits) {
    MembershipResult res;
    std::size_t n = h.nvars();
    for (const auto& g : gens)
        if (g.nvars() != n) throw DomainError("ring mismatch in membership query");
    if (h.is_zero()) {
        res.status = MemberStatus::found;
        return res;
    }
    if (auto pt = separating_zero(h, gens)) {
        res.status = MemberStatus::not_found;
        res.reason = "generators vanish at " + point_str(*pt) + " where the target does not";
        return res;
    }
    std::uint64_t maxg = 0;
    bool homogeneous = h.is_homogeneous();
    std::vector<PolyVec> gv;
    for (const auto& g : gens) {
        gv.push_back({g});
        if (!g.is_zero()) maxg = std::max(maxg, g.total_degree());
        homogeneous = homogeneous && g.is_homogeneous();
    }
    std::uint64_t start = h.total_degree() > maxg ? h.total_degree() - maxg : 0;
    std::uint64_t stop = D;
    if (homogeneous) stop = std::min(stop, h.total_degree());
    for (std::uint64_t t = start; t <= stop; ++t) {
        res.searched_degree = t;
        try {
            if (auto sol = solve_level({h}, gv, n, t, limits)) {
                std::map<std::size_t, Poly> cof;
                for (std::size_t j = 0; j < sol->size(); ++j) cof.emplace(j, (*sol)[j]);
                res.cert = make_cert(h, gens, std::move(cof));
                res.status = MemberStatus::found;
                return res;
            }
        } catch (const TooLarge&) {
            res.status = MemberStatus::undetermined;
            res.reason = "system at cofactor degree " + std::to_string(t) + " exceeds " +
                         std::to_string(limits.max_unknowns) + " unknowns";
            return res;
        }
    }
    res.status = MemberStatus::not_found;
    if (homogeneous && stop < D) res.reason = "homogeneous system exhausted at degree " + std::to_string(stop);
    else res.reason = "no representation with cofactor degree <= " + std::to_string(D);
    return res;
}

std::vector<PolyVec> module_kernel(const std::vector<PolyVec>& M, std::uint64_t D, const SearchLimits& limits) {
    if (M.empty() || M[0].empty()) throw DomainError("module_kernel needs a nonempty matrix");
    std::size_t k = M[0].size();
    for (const auto& row : M)
        if (row.size() != k) throw DomainError("ragged polynomial matrix");
    std::size_t n = M[0][0].nvars();
    // Column j of M, as the image of the j-th unit vector.
    std::vector<PolyVec> columns(k, PolyVec(M.size(), Poly(n)));
    for (std::size_t e = 0; e < M.size(); ++e)
        for (std::size_t j = 0; j < k; ++j) columns[j][e] = M[e][j];

    std::vector<PolyVec> gens;
    for (std::uint64_t t = 0; t <= D; ++t) {
        LevelSystem sys(columns, nullptr, n, t, limits);
        std::map<Monomial, std::size_t> mon_index;
        for (std::size_t i = 0; i < sys.mons.size(); ++i) mon_index.emplace(sys.mons[i], i);
        auto coords = [&](const PolyVec& v) {
            SparseRow r;
            for (std::size_t j = 0; j < k; ++j)
                for (const auto& [m, c] : v[j].terms()) r[j * sys.mons.size() + mon_index.at(m)] = c;
            return r;
        };
        RowEchelon span(sys.ncols);
        auto add_multiples = [&](const PolyVec& g) {
            std::uint64_t dg = vec_degree(g);
            for (const auto& mu : sys.mons) {
                if (monomial_degree(mu) + dg > t) break;
                PolyVec shifted;
                for (const auto& p : g) shifted.push_back(p.mul_monomial(mu));
                span.insert(coords(shifted));
            }
        };
        for (const auto& g : gens) add_multiples(g);
        for (const auto& x : kernel_basis(sys.rows, sys.ncols)) {
            PolyVec v = sys.unpack(x, k);
            if (span.in_span(coords(v))) continue;
            gens.push_back(v);
            add_multiples(v);
        }
    }
    return gens;
}

std::vector<PolyVec> syzygy_generators(const std::vector<Poly>& gens, std::uint64_t D, const SearchLimits& limits) {
    if (gens.empty()) throw DomainError("syzygy_generators needs at least one generator");
    return module_kernel({PolyVec(gens.begin(), gens.end())}, D, limits);
}

std::optional<std::vector<Poly>> module_member(const PolyVec& target, const std::vector<PolyVec>& gens,
                                               std::uint64_t D, const SearchLimits& limits) {
    std::size_t n = ring_size(gens, target);
    bool zero = true;
    for (const auto& p : target) zero = zero && p.is_zero();
    if (zero) return std::vector<Poly>(gens.size(), Poly(n));
    if (gens.empty()) return std::nullopt;
    for (std::uint64_t t = 0; t <= D; ++t)
        if (auto sol = solve_level(target, gens, n, t, limits)) return sol;
    return std::nullopt;
}

}  // namespace effdiff
