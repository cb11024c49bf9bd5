#include "documents.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "effdiff/autoreduced.hpp"
#include "effdiff/catalogue.hpp"
#include "effdiff/chains.hpp"
#include "effdiff/charset.hpp"
#include "effdiff/errors.hpp"
#include "effdiff/ideal_chains.hpp"
#include "effdiff/membership.hpp"

namespace effdiff::cli {

namespace {

constexpr const char* kMagic = "effdiff/1";

[[noreturn]] void bad(const std::string& msg) { throw DomainError(msg); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::uint64_t uint_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        bad(std::string("field '") + key + "' must be a natural number");
    return v.get<std::uint64_t>();
}

std::uint64_t uint_field(const Json& j, const char* key, std::uint64_t fallback) {
    return j.contains(key) ? uint_field(j, key) : fallback;
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
    return v;
}

Json outcome_json(const EvalOutcome& e) {
    Json j;
    j["exact"] = e.exact;
    j["value"] = e.value.get_str();
    if (!e.exact) j["residue"] = e.residue;
    return j;
}

// ---- rings

struct Ring {
    DiffShape shape;
    IndetNames names;

    DiffPoly poly(const Json& text) const {
        if (!text.is_string()) bad("differential polynomials are written as strings");
        return DiffPoly::parse(text.get<std::string>(), shape, names);
    }
    DiffPolys polys(const Json& arr) const {
        if (!arr.is_array()) bad("expected an array of polynomials");
        DiffPolys out;
        for (const auto& t : arr) out.push_back(poly(t));
        return out;
    }
    std::string str(const DiffPoly& f) const { return f.str(names); }
    Json strs(const DiffPolys& fs) const {
        Json a = Json::array();
        for (const auto& f : fs) a.push_back(str(f));
        return a;
    }
};

Ring ring_of(const Json& in) {
    const Json& r = field(in, "ring");
    Ring ring;
    ring.shape.n = static_cast<std::uint32_t>(uint_field(r, "n"));
    ring.shape.m = static_cast<std::uint32_t>(uint_field(r, "m"));
    if (ring.shape.n == 0 || ring.shape.m == 0) bad("ring needs n >= 1 and m >= 1");
    if (r.contains("names")) {
        for (const auto& s : array_field(r, "names")) {
            if (!s.is_string()) bad("indeterminate names must be strings");
            ring.names.push_back(s.get<std::string>());
        }
        if (ring.names.size() != ring.shape.n) bad("ring names must list n indeterminates");
    }
    return ring;
}

struct PolyRing {
    std::size_t n = 0;
    Poly poly(const Json& text) const {
        if (!text.is_string()) bad("polynomials are written as strings");
        return Poly::parse(text.get<std::string>(), n);
    }
    std::vector<Poly> polys(const Json& arr) const {
        if (!arr.is_array()) bad("expected an array of polynomials");
        std::vector<Poly> out;
        for (const auto& t : arr) out.push_back(poly(t));
        return out;
    }
};

Json poly_strs(const std::vector<Poly>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(p.str());
    return a;
}

MonotoneFn fn_field(const Json& in, const char* key) { return MonotoneFn::parse(string_field(in, key)); }

Budget budget_of(const RunConfig& cfg) {
    Budget b;
    b.max_bits = cfg.budget_bits;
    return b;
}

// ---- certificates

Json rank_json(const std::vector<Rank>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(Json::array({r.leader, r.degree}));
    return a;
}

std::vector<Rank> ranks_from(const Json& a) {
    std::vector<Rank> out;
    for (const auto& r : a) {
        if (!r.is_array() || r.size() != 2) bad("ranks are [leader index, degree] pairs");
        out.push_back({r[0].get<std::uint64_t>(), r[1].get<std::uint32_t>()});
    }
    return out;
}

Json pd_json(const PseudoDivCert& c, const Ring& R) {
    Json j;
    j["f"] = R.str(c.f);
    j["remainder"] = R.str(c.remainder);
    j["exponents"] = Json::array();
    for (const auto& [k, l] : c.exponents) j["exponents"].push_back(Json::array({k, l}));
    j["cofactors"] = Json::array();
    for (const auto& [g, q] : c.cofactors)
        j["cofactors"].push_back(Json{{"element", g.element}, {"theta", g.theta}, {"cofactor", R.str(q)}});
    j["trace"] = rank_json(c.trace);
    return j;
}

PseudoDivCert pd_from(const Json& j, const Ring& R) {
    PseudoDivCert c;
    c.f = R.poly(field(j, "f"));
    c.remainder = R.poly(field(j, "remainder"));
    for (const auto& e : array_field(j, "exponents")) c.exponents.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
    for (const auto& q : array_field(j, "cofactors")) {
        DerivedGen g{q.at("element").get<std::size_t>(), q.at("theta").get<std::vector<std::uint32_t>>()};
        c.cofactors[g] = R.poly(field(q, "cofactor"));
    }
    c.trace = ranks_from(array_field(j, "trace"));
    return c;
}

Json membership_json(const MembershipCert& c) {
    Json j;
    j["degree_bound"] = c.degree_bound;
    j["cofactors"] = Json::array();
    for (const auto& [i, q] : c.cofactors) j["cofactors"].push_back(Json{{"index", i}, {"cofactor", q.str()}});
    return j;
}

MembershipCert membership_from(const Json& j, const PolyRing& P) {
    MembershipCert c;
    c.degree_bound = uint_field(j, "degree_bound");
    for (const auto& q : array_field(j, "cofactors")) c.cofactors[q.at("index").get<std::size_t>()] = P.poly(field(q, "cofactor"));
    return c;
}

// ---- streams

Stream<DiffPolys> diff_stream(const Json& in, const Ring& R) {
    if (in.contains("chain")) {
        std::vector<DiffPolys> items;
        for (const auto& s : array_field(in, "chain")) items.push_back(R.polys(s));
        if (items.empty()) bad("chain must list at least one set");
        return stream_of(std::move(items), in.value("repeat_last", true));
    }
    const Json& g = field(in, "generator");
    std::string name = string_field(g, "name");
    if (name == "greedy") {
        if (!(R.shape == DiffShape{1, 1})) bad("the greedy generator needs n = m = 1");
        return greedy_descending_stream(fn_field(in, "D"));
    }
    if (name == "derivative-closure") return derivative_closure_stream(R.polys(array_field(g, "base")));
    bad("unknown generator '" + name + "'");
}

Stream<std::vector<Poly>> poly_stream(const Json& in, const PolyRing& P) {
    if (in.contains("chain")) {
        std::vector<std::vector<Poly>> items;
        for (const auto& s : array_field(in, "chain")) items.push_back(P.polys(s));
        if (items.empty()) bad("chain must list at least one set");
        return stream_of(std::move(items), in.value("repeat_last", true));
    }
    const Json& g = field(in, "generator");
    std::string name = string_field(g, "name");
    if (name == "staircase") {
        if (P.n != 2) bad("the staircase generator needs n = 2");
        return staircase_chain(static_cast<std::uint32_t>(uint_field(g, "length")));
    }
    bad("unknown generator '" + name + "'");
}

// ---- oracles

DiffOracle charset_oracle(const Json& in, const Ring& R) {
    const Json& o = field(in, "oracle");
    std::string kind = string_field(o, "kind");
    if (kind == "table") {
        std::vector<std::pair<DiffPoly, bool>> entries;
        for (const auto& e : array_field(o, "entries")) entries.emplace_back(R.poly(field(e, "poly")), field(e, "member").get<bool>());
        return table_oracle(entries);
    }
    if (kind == "remainder") return remainder_oracle(R.polys(array_field(o, "set")));
    bad("unknown oracle kind '" + kind + "'");
}

RittOracle ritt_oracle(const Json& in, const Ring& R) {
    const Json& o = field(in, "oracle");
    std::string kind = string_field(o, "kind");
    if (kind == "pseudodivision") return pseudodivision_ritt_oracle();
    if (kind == "power") return power_ritt_oracle(uint_field(o, "max_power"), uint_field(o, "degree_cap", 4));
    if (kind == "table") {
        std::vector<RittTableEntry> entries;
        for (const auto& e : array_field(o, "entries"))
            entries.push_back({uint_field(e, "i"), R.poly(field(e, "h")), field(e, "member").get<bool>()});
        return table_ritt_oracle(entries);
    }
    bad("unknown oracle kind '" + kind + "'");
}

Json answer_json(const std::optional<bool>& a) { return a ? Json(*a) : Json(nullptr); }

// ---- procedures

Json run_pseudodivide(const Json& in, const RunConfig&) {
    Ring R = ring_of(in);
    DiffPoly f = R.poly(field(in, "f"));
    DiffPolys set = R.polys(array_field(in, "set"));
    Json out;
    if (in.value("mode", std::string("full")) == "step") {
        std::vector<std::string> labels;
        if (in.contains("labels")) labels = in.at("labels").get<std::vector<std::string>>();
        out["steps"] = Json::array();
        for (std::size_t k = 0; k < set.size(); ++k) {
            std::string label = k < labels.size() ? labels[k] : "g" + std::to_string(k + 1);
            auto step = division_step(f, set[k]);
            if (!step) {
                out["steps"].push_back(Json{{"by", label}, {"reduced", true}});
                continue;
            }
            out["steps"].push_back(Json{{"by", label},
                                        {"display", step->str(label, R.names)},
                                        {"multiplier", R.str(step->multiplier)},
                                        {"quotient", R.str(step->quotient)},
                                        {"generator", R.str(step->generator)},
                                        {"result", R.str(step->result)}});
        }
        return out;
    }
    PseudoDivCert c = pseudodivide(f, set);
    out["remainder"] = R.str(c.remainder);
    out["certificate"] = pd_json(c, R);
    return out;
}

Json run_autoreduce(const Json& in, const RunConfig&) {
    Ring R = ring_of(in);
    auto res = autoreduce(R.polys(array_field(in, "set")));
    Json out;
    out["set"] = R.strs(res.set);
    out["unit"] = res.unit;
    out["history"] = Json::array();
    for (const auto& h : res.history) out["history"].push_back(R.strs(h));
    out["certificates"] = Json::array();
    for (const auto& c : res.certificates) out["certificates"].push_back(pd_json(c, R));
    return out;
}

Json run_coherent(const Json& in, const RunConfig&) {
    Ring R = ring_of(in);
    auto res = coherent(R.polys(array_field(in, "set")), in.value("containment", false));
    Json out;
    out["set"] = R.strs(res.set);
    out["unit"] = res.unit;
    out["history"] = Json::array();
    for (const auto& h : res.history) out["history"].push_back(R.strs(h));
    out["pair_certificates"] = Json::array();
    for (const auto& c : res.pair_certificates) out["pair_certificates"].push_back(pd_json(c, R));
    out["input_certificates"] = Json::array();
    for (const auto& c : res.input_certificates) out["input_certificates"].push_back(pd_json(c, R));
    return out;
}

Json run_charset(const Json& in, const RunConfig& cfg) {
    Ring R = ring_of(in);
    DiffOracle oracle = charset_oracle(in, R);
    CharSetOptions opt;
    opt.witness_pool_size = cfg.witness_pool_size;
    auto res = char_set(R.polys(array_field(in, "set")), oracle, opt);
    Json out;
    out["sigma"] = R.strs(res.sigma);
    out["start"] = R.strs(res.start);
    out["steps"] = Json::array();
    for (const auto& s : res.steps)
        out["steps"].push_back(Json{{"repair", s.repair}, {"added", R.strs(s.added)}, {"set", R.strs(s.set)}});
    out["calls"] = Json::array();
    for (const auto& c : res.calls)
        out["calls"].push_back(Json{{"query", R.str(c.query)}, {"answer", answer_json(c.answer)}, {"purpose", c.purpose}});
    out["input_certificates"] = Json::array();
    for (const auto& c : res.input_certificates) out["input_certificates"].push_back(pd_json(c, R));
    out["bound"] = res.bound.sexpr();
    out["bound_value"] = outcome_json(res.bound_value);
    return out;
}

std::vector<NatVec> vectors_of(const Json& in) {
    std::vector<NatVec> vs;
    for (const auto& v : array_field(in, "vectors")) vs.push_back(v.get<NatVec>());
    return vs;
}

Json run_dickson(const Json& in, const RunConfig& cfg) {
    auto vs = vectors_of(in);
    if (vs.empty()) bad("vectors must not be empty");
    auto n = static_cast<std::uint32_t>(uint_field(in, "n", vs.front().size()));
    for (const auto& v : vs)
        if (v.size() != n) bad("every vector needs n coordinates");
    auto w = dickson_witness(stream_of(vs), fn_field(in, "D"), n, cfg.scan_cap, budget_of(cfg));
    Json out;
    out["pair"] = "(" + std::to_string(w.i) + "," + std::to_string(w.j) + ")";
    out["i"] = w.i;
    out["j"] = w.j;
    out["bound"] = outcome_json(w.bound);
    return out;
}

Json run_hilbert(const Json& in, const RunConfig& cfg) {
    PolyRing P{uint_field(in, "n")};
    auto w = hilbert_chain_witness(poly_stream(in, P), fn_field(in, "D"), static_cast<std::uint32_t>(P.n), cfg.scan_cap, {},
                                   budget_of(cfg));
    Json out;
    out["j"] = w.j;
    out["lower"] = poly_strs(w.lower);
    out["upper"] = poly_strs(w.upper);
    out["reduced"] = poly_strs(w.reduced);
    out["certificates"] = Json::array();
    for (const auto& c : w.certificates) out["certificates"].push_back(membership_json(c));
    out["unchecked_ascents"] = w.unchecked_ascents;
    out["bound"] = outcome_json(w.bound);
    return out;
}

Json run_autoreduced_chain(const Json& in, const RunConfig& cfg) {
    Ring R = ring_of(in);
    auto w = autoreduced_chain_witness(diff_stream(in, R), fn_field(in, "D"), R.shape, cfg.scan_cap, budget_of(cfg));
    Json out;
    out["index"] = w.index;
    out["ranks"] = Json::array();
    for (const auto& r : w.ranks) out["ranks"].push_back(rank_json(r));
    out["bound"] = outcome_json(w.bound);
    out["bound_checked"] = w.bound_checked;
    return out;
}

Json run_ritt_chain(const Json& in, const RunConfig& cfg) {
    Ring R = ring_of(in);
    DiffPolys base = R.polys(array_field(in, "base"));
    auto w = ritt_chain_witness(base, diff_stream(in, R), fn_field(in, "D"), fn_field(in, "F"), uint_field(in, "i0", 1),
                                ritt_oracle(in, R), cfg.scan_cap, budget_of(cfg));
    Json out;
    out["index"] = w.index;
    out["calls"] = Json::array();
    for (const auto& c : w.calls) out["calls"].push_back(Json{{"i", c.i}, {"h", R.str(c.h)}, {"answer", answer_json(c.answer)}});
    out["bound"] = w.bound.sexpr();
    out["bound_value"] = outcome_json(w.bound_value);
    out["bound_checked"] = w.bound_checked;
    return out;
}

Json run_membership(const Json& in, const RunConfig&) {
    PolyRing P{uint_field(in, "n")};
    auto res = membership_bounded(P.poly(field(in, "h")), P.polys(array_field(in, "gens")), uint_field(in, "D"));
    Json out;
    out["status"] = to_string(res.status);
    out["searched_degree"] = res.searched_degree;
    if (!res.reason.empty()) out["reason"] = res.reason;
    if (res.found()) out["certificate"] = membership_json(res.cert);
    return out;
}

Json run_syzygy(const Json& in, const RunConfig&) {
    PolyRing P{uint_field(in, "n")};
    auto gens = P.polys(array_field(in, "gens"));
    std::uint64_t D = uint_field(in, "D");
    auto syz = syzygy_generators(gens, D);
    Json out;
    out["generators"] = Json::array();
    for (const auto& v : syz) out["generators"].push_back(poly_strs(v));
    if (in.contains("target")) {
        auto coeffs = module_member(P.polys(in.at("target")), syz, D);
        out["member"] = coeffs.has_value();
        if (coeffs) out["coefficients"] = poly_strs(*coeffs);
    }
    return out;
}

using Runner = std::function<Json(const Json&, const RunConfig&)>;
using Checker = std::function<void(const Json& in, const Json& res, std::vector<std::string>& fails)>;

// ---- replay

void check(bool ok, const std::string& what, std::vector<std::string>& fails) {
    if (!ok) fails.push_back(what);
}

bool strictly_descending(const std::vector<DiffPolys>& history) {
    for (std::size_t i = 1; i < history.size(); ++i)
        if (compare_sets(history[i], history[i - 1]) >= 0) return false;
    return true;
}

void verify_pseudodivide(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    DiffPoly f = R.poly(field(in, "f"));
    DiffPolys set = R.polys(array_field(in, "set"));
    if (res.contains("steps")) {
        for (const auto& s : res.at("steps")) {
            if (s.value("reduced", false)) continue;
            DiffPoly M = R.poly(field(s, "multiplier")), q = R.poly(field(s, "quotient")),
                     g = R.poly(field(s, "generator")), out = R.poly(field(s, "result"));
            check(out == M * f - q * g, "step by " + string_field(s, "by") + ": M f - q theta(g) != result", fails);
        }
        return;
    }
    PseudoDivCert c = pd_from(field(res, "certificate"), R);
    check(c.f == f, "certificate is for a different f", fails);
    check(c.verify(set), "pseudodivision identity fails", fails);
    check(reduced(c.remainder, set), "remainder is not reduced", fails);
}

void verify_autoreduce(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    DiffPolys input = R.polys(array_field(in, "set"));
    DiffPolys set = R.polys(field(res, "set"));
    std::vector<DiffPolys> history;
    for (const auto& h : array_field(res, "history")) history.push_back(R.polys(h));
    check(strictly_descending(history), "history ranks do not strictly drop", fails);
    if (field(res, "unit").get<bool>()) return;
    check(is_autoreduced(set), "output is not autoreduced", fails);
    const Json& certs = array_field(res, "certificates");
    check(certs.size() == input.size(), "one certificate per input expected", fails);
    for (std::size_t k = 0; k < certs.size() && k < input.size(); ++k) {
        PseudoDivCert c = pd_from(certs[k], R);
        check(c.f == input[k] && c.remainder.is_zero() && c.verify(set),
              "input " + std::to_string(k + 1) + " does not replay to 0", fails);
    }
}

void verify_coherent(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    DiffPolys input = R.polys(array_field(in, "set"));
    DiffPolys set = R.polys(field(res, "set"));
    std::vector<DiffPolys> history;
    for (const auto& h : array_field(res, "history")) history.push_back(R.polys(h));
    check(strictly_descending(history), "history ranks do not strictly drop", fails);
    if (field(res, "unit").get<bool>()) return;
    check(is_autoreduced(set), "output is not autoreduced", fails);
    auto pairs = s_pairs(set);
    const Json& pc = array_field(res, "pair_certificates");
    check(pc.size() == pairs.size(), "one certificate per Delta-S pair expected", fails);
    for (std::size_t k = 0; k < pc.size() && k < pairs.size(); ++k) {
        PseudoDivCert c = pd_from(pc[k], R);
        check(c.f == pairs[k].delta && c.remainder.is_zero() && c.verify(set),
              "pair " + std::to_string(k + 1) + " does not replay to 0", fails);
    }
    for (const auto& cj : array_field(res, "input_certificates")) {
        PseudoDivCert c = pd_from(cj, R);
        bool listed = std::find(input.begin(), input.end(), c.f) != input.end();
        check(listed && c.remainder.is_zero() && c.verify(set), "input certificate does not replay to 0", fails);
    }
}

void verify_charset(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    DiffPolys input = R.polys(array_field(in, "set"));
    std::vector<std::pair<DiffPoly, bool>> answered;
    for (const auto& c : array_field(res, "calls"))
        if (!c.at("answer").is_null()) answered.emplace_back(R.poly(field(c, "query")), c.at("answer").get<bool>());
    CharSetResult r;
    r.sigma = R.polys(field(res, "sigma"));
    check(r.verify(input, table_oracle(answered)), "Sigma does not replay against the recorded answers", fails);
    for (const auto& cj : array_field(res, "input_certificates")) {
        PseudoDivCert c = pd_from(cj, R);
        check(c.remainder.is_zero() && c.verify(r.sigma), "input certificate does not replay to 0", fails);
    }
}

void verify_dickson(const Json& in, const Json& res, std::vector<std::string>& fails) {
    auto vs = vectors_of(in);
    std::uint64_t i = uint_field(res, "i"), j = uint_field(res, "j");
    auto le = [&](std::size_t a, std::size_t b) {
        for (std::size_t s = 0; s < vs[a].size(); ++s)
            if (vs[a][s] > vs[b][s]) return false;
        return true;
    };
    if (i < 1 || i >= j || j > vs.size()) {
        fails.push_back("pair out of range");
        return;
    }
    check(le(i - 1, j - 1), "v_i is not below v_j", fails);
    for (std::size_t b = 1; b < j - 1; ++b)
        for (std::size_t a = 0; a < b; ++a) check(!le(a, b), "an earlier pair exists", fails);
    for (std::size_t a = 0; a + 1 < i; ++a) check(!le(a, j - 1), "an earlier i exists for this j", fails);
}

void verify_hilbert(const Json& in, const Json& res, std::vector<std::string>& fails) {
    PolyRing P{uint_field(in, "n")};
    auto stream = poly_stream(in, P);
    HilbertWitness w;
    w.j = uint_field(res, "j");
    w.lower = P.polys(field(res, "lower"));
    w.upper = P.polys(field(res, "upper"));
    for (const auto& c : array_field(res, "certificates")) w.certificates.push_back(membership_from(c, P));
    check(stream(w.j) == std::optional(w.lower), "lower set is not Lambda_j", fails);
    check(stream(w.j + 1) == std::optional(w.upper), "upper set is not Lambda_{j+1}", fails);
    check(w.verify(), "membership certificates do not re-expand", fails);
}

void verify_autoreduced_chain(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    auto stream = diff_stream(in, R);
    AutoreducedChainWitness w;
    w.index = uint_field(res, "index");
    for (const auto& r : array_field(res, "ranks")) w.ranks.push_back(ranks_from(r));
    for (std::uint64_t i = 1; i <= w.index + 1 && i <= w.ranks.size(); ++i) {
        auto s = stream(i);
        check(s && rank_sequence(*s) == w.ranks[i - 1], "recorded ranks differ at " + std::to_string(i), fails);
    }
    check(w.verify(), "ranks do not drop up to the index, or drop after it", fails);
}

void verify_ritt_chain(const Json& in, const Json& res, std::vector<std::string>& fails) {
    Ring R = ring_of(in);
    RittChainWitness w;
    w.index = uint_field(res, "index");
    for (const auto& c : array_field(res, "calls")) {
        std::optional<bool> a;
        if (!c.at("answer").is_null()) a = c.at("answer").get<bool>();
        w.calls.push_back({uint_field(c, "i"), R.poly(field(c, "h")), a});
    }
    check(w.verify(diff_stream(in, R), R.polys(array_field(in, "base")), ritt_oracle(in, R)),
          "oracle does not confirm the calls at the index", fails);
}

void verify_membership(const Json& in, const Json& res, std::vector<std::string>& fails) {
    if (string_field(res, "status") != "found") return;
    PolyRing P{uint_field(in, "n")};
    MembershipCert c = membership_from(field(res, "certificate"), P);
    check(c.verify(P.poly(field(in, "h")), P.polys(array_field(in, "gens"))), "certificate does not re-expand", fails);
}

void verify_syzygy(const Json& in, const Json& res, std::vector<std::string>& fails) {
    PolyRing P{uint_field(in, "n")};
    auto gens = P.polys(array_field(in, "gens"));
    std::vector<PolyVec> syz;
    for (const auto& v : array_field(res, "generators")) {
        PolyVec vec = P.polys(v);
        Poly sum(P.n);
        for (std::size_t i = 0; i < gens.size() && i < vec.size(); ++i) sum += gens[i] * vec[i];
        check(vec.size() == gens.size() && sum.is_zero(), "a generator is not a syzygy", fails);
        syz.push_back(std::move(vec));
    }
    if (res.value("member", false)) {
        PolyVec target = P.polys(in.at("target"));
        auto coeffs = P.polys(field(res, "coefficients"));
        PolyVec sum(gens.size(), Poly(P.n));
        for (std::size_t k = 0; k < coeffs.size() && k < syz.size(); ++k)
            for (std::size_t i = 0; i < gens.size(); ++i) sum[i] += coeffs[k] * syz[k][i];
        check(sum == target, "coefficients do not re-expand to the target", fails);
    }
}

struct Procedure {
    const char* name;
    Runner run;
    Checker verify;
};

const std::vector<Procedure>& procedures() {
    static const std::vector<Procedure> table{
        {"pseudodivide", run_pseudodivide, verify_pseudodivide},
        {"autoreduce", run_autoreduce, verify_autoreduce},
        {"coherent", run_coherent, verify_coherent},
        {"charset", run_charset, verify_charset},
        {"dickson", run_dickson, verify_dickson},
        {"hilbert-chain", run_hilbert, verify_hilbert},
        {"autoreduced-chain", run_autoreduced_chain, verify_autoreduced_chain},
        {"ritt-chain", run_ritt_chain, verify_ritt_chain},
        {"membership", run_membership, verify_membership},
        {"syzygy", run_syzygy, verify_syzygy},
    };
    return table;
}

const Procedure& find_procedure(const std::string& name) {
    for (const auto& p : procedures())
        if (name == p.name) return p;
    bad("unknown procedure '" + name + "'");
}

// JSON library type errors on malformed documents are input errors.
template <class F>
auto as_domain_errors(F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed document: ") + e.what());
    }
}

}  // namespace

Document parse_document(const std::string& text) {
    auto nl = text.find('\n');
    std::string header = text.substr(0, nl);
    std::istringstream hs(header);
    std::string magic;
    Document doc;
    hs >> magic >> doc.kind >> doc.proc;
    if (magic != kMagic) bad("document must start with '" + std::string(kMagic) + "'");
    if (doc.kind != "input" && doc.kind != "result" && doc.kind != "config") bad("unknown document kind '" + doc.kind + "'");
    if (doc.kind != "config" && doc.proc.empty()) bad(doc.kind + " document header names no procedure");
    std::string rest = nl == std::string::npos ? "" : text.substr(nl + 1);
    try {
        doc.body = rest.find_first_not_of(" \t\r\n") == std::string::npos ? Json::object() : Json::parse(rest);
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    return doc;
}

std::string write_document(const Document& doc) {
    std::string out = std::string(kMagic) + " " + doc.kind;
    if (!doc.proc.empty()) out += " " + doc.proc;
    return out + "\n" + doc.body.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const Json& j) {
    return as_domain_errors([&] {
        RunConfig c;
        for (const auto& [k, v] : j.items())
            if (k != "budget_bits" && k != "witness_pool_size" && k != "scan_cap" && k != "seed" && k != "ranking")
                bad("unknown config key '" + k + "'");
        if (j.contains("ranking") && j.at("ranking") != "orderly") bad("only the orderly ranking is supported");
        c.budget_bits = uint_field(j, "budget_bits", c.budget_bits);
        c.witness_pool_size = uint_field(j, "witness_pool_size", c.witness_pool_size);
        c.scan_cap = uint_field(j, "scan_cap", c.scan_cap);
        c.seed = uint_field(j, "seed", c.seed);
        if (c.budget_bits == 0 || c.witness_pool_size == 0 || c.scan_cap == 0) bad("config caps must be positive");
        return c;
    });
}

Json RunConfig::to_json() const {
    return Json{{"budget_bits", budget_bits},
                {"witness_pool_size", witness_pool_size},
                {"scan_cap", scan_cap},
                {"ranking", "orderly"},
                {"seed", seed}};
}

const std::vector<std::string>& procedure_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& p : procedures()) out.emplace_back(p.name);
        return out;
    }();
    return names;
}

Json run_procedure(const std::string& proc, const Json& input, const RunConfig& cfg) {
    const Procedure& p = find_procedure(proc);
    return as_domain_errors([&] {
        Json out;
        out["input"] = input;
        out["config"] = cfg.to_json();
        out["result"] = p.run(input, cfg);
        return out;
    });
}

std::vector<std::string> verify_result(const std::string& proc, const Json& result) {
    const Procedure& p = find_procedure(proc);
    return as_domain_errors([&] {
        std::vector<std::string> fails;
        p.verify(field(result, "input"), field(result, "result"), fails);
        return fails;
    });
}

std::string bound_command(const BoundRequest& req) {
    std::string kinds = catalogue_kinds(req.name);
    bool repeat = !kinds.empty() && kinds.back() == '*';
    if (repeat) kinds.pop_back();
    std::vector<BoundExpr> args;
    std::size_t fn_next = 0, pos_next = 0;
    auto next_positional = [&]() -> const std::string& {
        if (pos_next >= req.args.size()) bad("too few arguments for '" + req.name + "'");
        return req.args[pos_next++];
    };
    auto numeric = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
            bad("argument '" + t + "' of '" + req.name + "' must be a natural number");
        return BoundExpr::constant(BigNat(t));
    };
    auto function = [&]() {
        const std::string& body = fn_next < req.functions.size() ? req.functions[fn_next++] : next_positional();
        return MonotoneFn::parse(body).expr();
    };
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        if (kinds[k] == 'F') {
            args.push_back(function());
        } else if (repeat && k + 1 == kinds.size()) {
            while (pos_next < req.args.size()) args.push_back(numeric(req.args[pos_next++]));
        } else {
            args.push_back(numeric(next_positional()));
        }
    }
    if (pos_next < req.args.size()) bad("too many arguments for '" + req.name + "'");
    if (fn_next < req.functions.size()) bad("'" + req.name + "' takes no further function arguments");
    BoundExpr call = catalogue(req.name, std::move(args));

    std::ostringstream os;
    if (req.symbolic) {
        auto unfolded = unfold(call);
        os << (unfolded ? unfolded->sexpr() : call.sexpr()) << "\n";
    } else if (!req.eval) {
        os << call.sexpr() << "\n";
    }
    if (req.eval) {
        Budget b;
        b.max_bits = req.budget_bits;
        EvalOutcome out = evaluate(call, {}, b);
        if (out.exact) os << out.value.get_str() << "\n";
        else os << "RESIDUE " << out.value.get_str() << " " << out.residue << "\n";
    }
    return os.str();
}

}  // namespace effdiff::cli
