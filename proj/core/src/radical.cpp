#include "effdiff/radical.hpp"

#include <sstream>

#include "effdiff/catalogue.hpp"
#include "effdiff/errors.hpp"

namespace effdiff {

FactorOracle table_oracle(std::vector<std::pair<std::vector<Poly>, FactorSplit>> table) {
    return [table = std::move(table)](const std::vector<Poly>& gens) -> std::optional<FactorSplit> {
        for (const auto& [key, split] : table)
            if (key == gens) return split;
        return std::nullopt;
    };
}

namespace {

std::string gens_str(const std::vector<Poly>& gens) {
    std::string s = "{";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].str();
    return s + "}";
}

}  // namespace

bool RadicalRep::verify(const Poly& f, const std::vector<Poly>& lambda) const {
    if (r.size() != coeffs.size() || r.size() != power_certs.size()) return false;
    Poly sum(f.nvars());
    for (std::size_t i = 0; i < r.size(); ++i) {
        sum += coeffs[i] * r[i];
        if (!power_certs[i].verify(r[i].pow(std::uint64_t(1) << depth), lambda)) return false;
    }
    return sum == f;
}

RadicalRep radical_tree(const std::vector<Poly>& lambda, const Poly& f, std::uint64_t k, const FactorOracle& oracle,
                        const RadicalOptions& opt) {
    auto base = membership_bounded(f.pow(k), lambda, opt.degree_bound, opt.limits);
    if (!base.found())
        throw DomainError("f^" + std::to_string(k) + " is not certified in the ideal: " + base.reason);

    RadicalRep rep;
    std::ostringstream log;
    rep.tree.push_back(RadicalNode{lambda, std::nullopt, std::nullopt, -1, -1, 0});
    std::vector<std::size_t> leaves;
    for (std::size_t idx = 0; idx < rep.tree.size(); ++idx) {
        std::vector<Poly> gens = rep.tree[idx].gens;
        unsigned depth = rep.tree[idx].depth;
        auto mem = membership_bounded(f, gens, opt.degree_bound, opt.limits);
        log << "node " << idx << " depth " << depth << " " << gens_str(gens) << ": f " << to_string(mem.status);
        if (mem.found()) {
            log << " (leaf)\n";
            rep.tree[idx].f_cert = mem.cert;
            leaves.push_back(idx);
            rep.depth = std::max(rep.depth, depth);
            continue;
        }
        if (depth >= opt.max_depth) {
            rep.transcript = log.str();
            throw Aborted("radical tree passed depth " + std::to_string(opt.max_depth), rep.transcript);
        }
        auto split = oracle(gens);
        if (!split) {
            log << ", oracle: unknown\n";
            rep.transcript = log.str();
            throw Aborted("factor oracle returned unknown at node " + std::to_string(idx), rep.transcript);
        }
        log << ", split " << split->g.str() << " * " << split->h.str() << '\n';
        if (!membership_bounded(split->g * split->h, gens, opt.degree_bound, opt.limits).found())
            throw ContractViolation("oracle split " + split->g.str() + " * " + split->h.str() +
                                    " is not in the node ideal");
        if (membership_bounded(split->g, gens, opt.degree_bound, opt.limits).found() ||
            membership_bounded(split->h, gens, opt.degree_bound, opt.limits).found())
            throw ContractViolation("oracle split has a factor already in the node ideal");
        rep.tree[idx].split = split;
        std::vector<Poly> g0 = gens, g1 = gens;
        g0.push_back(split->g);
        g1.push_back(split->h);
        rep.tree[idx].child0 = static_cast<int>(rep.tree.size());
        rep.tree.push_back(RadicalNode{g0, std::nullopt, std::nullopt, -1, -1, depth + 1});
        rep.tree[idx].child1 = static_cast<int>(rep.tree.size());
        rep.tree.push_back(RadicalNode{g1, std::nullopt, std::nullopt, -1, -1, depth + 1});
    }

    std::size_t n = f.nvars();
    if (leaves.size() == 1) {
        rep.r = {f};
        rep.coeffs = {Poly::constant(n, 1)};
    } else {
        // Unknowns: the cofactor slots of every leaf, concatenated.
        std::vector<std::size_t> offset;
        std::size_t slots = 0;
        for (auto l : leaves) {
            offset.push_back(slots);
            slots += rep.tree[l].gens.size();
        }
        std::vector<PolyVec> M;
        for (std::size_t li = 1; li < leaves.size(); ++li) {
            PolyVec row(slots, Poly(n));
            const auto& g0 = rep.tree[leaves[0]].gens;
            const auto& gl = rep.tree[leaves[li]].gens;
            for (std::size_t i = 0; i < g0.size(); ++i) row[offset[0] + i] = g0[i];
            for (std::size_t i = 0; i < gl.size(); ++i) row[offset[li] + i] = -gl[i];
            M.push_back(row);
        }
        PolyVec c(slots, Poly(n));
        for (std::size_t li = 0; li < leaves.size(); ++li)
            for (const auto& [i, p] : rep.tree[leaves[li]].f_cert->cofactors) c[offset[li] + i] = p;
        std::uint64_t dc = vec_degree(c);
        auto gens = module_kernel(M, dc, opt.limits);
        auto d = module_member(c, gens, dc, opt.limits);
        if (!d) throw ContractViolation("leaf cofactors are not in the generated solution module");
        const auto& g0 = rep.tree[leaves[0]].gens;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if ((*d)[j].is_zero()) continue;
            Poly fj(n);
            for (std::size_t i = 0; i < g0.size(); ++i) fj += gens[j][offset[0] + i] * g0[i];
            if (fj.is_zero()) continue;
            rep.r.push_back(fj);
            rep.coeffs.push_back((*d)[j]);
        }
    }
    std::uint64_t power = std::uint64_t(1) << rep.depth;
    for (const auto& ri : rep.r) {
        auto pc = membership_bounded(ri.pow(power), lambda, opt.degree_bound * power, opt.limits);
        if (!pc.found())
            throw Aborted("no certificate for r^" + std::to_string(power) + " with r = " + ri.str(), log.str());
        rep.power_certs.push_back(pc.cert);
    }
    rep.transcript = log.str();
    if (!rep.verify(f, lambda)) throw ContractViolation("radical representation does not verify");
    return rep;
}

std::optional<std::pair<std::uint64_t, MembershipCert>> find_power(const std::vector<Poly>& lambda, const Poly& f,
                                                                   std::uint64_t kmax, std::uint64_t degree_bound,
                                                                   const SearchLimits& limits) {
    Poly p = Poly::constant(f.nvars(), 1);
    for (std::uint64_t k = 1; k <= kmax; ++k) {
        p *= f;
        auto r = membership_bounded(p, lambda, degree_bound, limits);
        if (r.found()) return std::make_pair(k, r.cert);
    }
    return std::nullopt;
}

bool PowerCert::verify(const Poly& f, const std::vector<Poly>& lambda) const {
    if (k == 0 || k > E || !base.verify(f.pow(k), lambda)) return false;
    return !expanded || expanded->verify(f.pow(E), lambda);
}

std::string PowerCert::str() const {
    std::ostringstream os;
    os << "f^" << E << " = f^" << (E - k) << " * (" << base.str() << ")";
    if (expanded) os << "\nexpanded: " << expanded->str();
    return os.str();
}

PowerCert rabinowitsch_bound_check(const std::vector<Poly>& lambda, const Poly& f, std::uint64_t E, std::uint64_t k,
                                   const MembershipCert& base, std::uint64_t expand_limit) {
    if (k == 0 || k > E) throw DomainError("base power must lie in [1, E]");
    if (!base.verify(f.pow(k), lambda)) throw DomainError("base certificate for f^" + std::to_string(k) + " fails");
    PowerCert pc{k, E, base, std::nullopt};
    if (E - k <= expand_limit) {
        Poly mult = f.pow(E - k);
        std::map<std::size_t, Poly> cof;
        for (const auto& [i, c] : base.cofactors) cof.emplace(i, c * mult);
        pc.expanded = make_cert(f.pow(E), lambda, std::move(cof));
    }
    return pc;
}

std::vector<PrimeViolation> prime_up_to_check(const std::vector<Poly>& lambda, std::uint64_t b,
                                              const std::vector<std::pair<Poly, Poly>>& pool,
                                              const SearchLimits& limits) {
    std::size_t n = lambda.empty() ? 0 : lambda[0].nvars();
    Budget bud;
    Val cap = frak_d(Val(n), Val(2 * b), bud);
    std::uint64_t bound = cap.exact && cap.v.fits_ulong_p() ? cap.v.get_ui() : UINT64_MAX;
    std::vector<PrimeViolation> out;
    for (const auto& [f, g] : pool) {
        if (!membership_bounded(f * g, lambda, bound, limits).found()) continue;
        auto mf = membership_bounded(f, lambda, bound, limits);
        auto mg = membership_bounded(g, lambda, bound, limits);
        if (mf.found() || mg.found()) continue;
        bool certain = mf.status == MemberStatus::not_found && mg.status == MemberStatus::not_found;
        out.push_back({f, g, certain});
    }
    return out;
}

}  // namespace effdiff
