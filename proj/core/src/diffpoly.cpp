#include "effdiff/diffpoly.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "effdiff/errors.hpp"

namespace effdiff {

std::string derivative_name(const Derivative& u, const IndetNames& names) {
    std::string out = derivative_str(u);
    if (names.empty()) return out;
    if (u.indet < 1 || u.indet > names.size()) throw DomainError("no name for indeterminate " + std::to_string(u.indet));
    out.erase(out.rfind('x'));
    return out + names[u.indet - 1];
}

DiffPoly::DiffPoly(DiffShape shape, Poly p) : shape_(shape), p_(std::move(p)) { trim(); }

DiffPoly DiffPoly::constant(DiffShape shape, const Rational& c) { return {shape, Poly::constant(0, c)}; }

DiffPoly DiffPoly::of(DiffShape shape, const Derivative& u, std::uint32_t power) {
    return of_index(shape, rank_index(u, shape), power);
}

DiffPoly DiffPoly::of_index(DiffShape shape, std::uint64_t index, std::uint32_t power) {
    if (index == 0) throw DomainError("ranking indices start at 1");
    Monomial m(index, 0);
    m[index - 1] = power;
    return {shape, Poly::monomial(index, std::move(m))};
}

void DiffPoly::trim() {
    std::size_t used = 0;
    for (const auto& [m, c] : p_.terms())
        for (std::size_t i = m.size(); i > used; --i)
            if (m[i - 1] != 0) {
                used = i;
                break;
            }
    if (used == p_.nvars()) return;
    Poly q(used);
    for (const auto& [m, c] : p_.terms()) q.add_term(Monomial(m.begin(), m.begin() + static_cast<long>(used)), c);
    p_ = std::move(q);
}

void DiffPoly::check(const DiffPoly& o) const {
    if (!(shape_ == o.shape_)) throw DomainError("differential polynomials from different rings");
}

std::uint64_t DiffPoly::max_index() const { return p_.nvars(); }

std::vector<std::uint64_t> DiffPoly::indices() const {
    std::vector<bool> seen(p_.nvars(), false);
    for (const auto& [m, c] : p_.terms())
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) seen[i] = true;
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.push_back(i + 1);
    return out;
}

std::uint32_t DiffPoly::degree_in(std::uint64_t index) const {
    if (index == 0 || index > p_.nvars()) return 0;
    return p_.degree_in(index - 1);
}

DiffPoly DiffPoly::coeff_in(std::uint64_t index, std::uint32_t k) const {
    if (index == 0 || index > p_.nvars()) return k == 0 ? *this : DiffPoly(shape_);
    return {shape_, p_.coeff_in(index - 1, k)};
}

DiffPoly DiffPoly::partial(std::uint64_t index) const {
    if (index == 0 || index > p_.nvars()) return DiffPoly(shape_);
    return {shape_, p_.partial(index - 1)};
}

std::uint64_t DiffPoly::leader_index() const {
    if (is_constant()) throw DomainError("a constant has no leader");
    return p_.nvars();
}

DiffPoly DiffPoly::initial() const {
    auto v = leader_index();
    return coeff_in(v, degree_in(v));
}

DiffPoly DiffPoly::separant() const { return partial(leader_index()); }

DiffPoly DiffPoly::derive(std::uint32_t i) const {
    if (i < 1 || i > shape_.m) throw DomainError("derivation index out of range");
    auto idx = indices();
    std::vector<std::uint64_t> target(idx.size());
    std::size_t nv = p_.nvars();
    for (std::size_t k = 0; k < idx.size(); ++k) {
        Derivative u = derivative_at(idx[k], shape_);
        ++u.exps[i - 1];
        target[k] = rank_index(u, shape_);
        nv = std::max<std::size_t>(nv, target[k]);
    }
    Poly base = p_.extend(nv);
    Poly r(nv);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        Poly d = base.partial(idx[k] - 1);
        if (d.is_zero()) continue;
        Monomial m(nv, 0);
        m[target[k] - 1] = 1;
        r += d.mul_monomial(m);
    }
    return {shape_, std::move(r)};
}

DiffPoly DiffPoly::apply(const std::vector<std::uint32_t>& theta) const {
    if (theta.size() != shape_.m) throw DomainError("derivation operator has wrong length");
    DiffPoly r = *this;
    for (std::uint32_t i = 0; i < shape_.m; ++i)
        for (std::uint32_t k = 0; k < theta[i]; ++k) r = r.derive(i + 1);
    return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    check(o);
    std::size_t nv = std::max(p_.nvars(), o.p_.nvars());
    p_ = p_.extend(nv) + o.p_.extend(nv);
    trim();
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    check(o);
    std::size_t nv = std::max(p_.nvars(), o.p_.nvars());
    p_ = p_.extend(nv) - o.p_.extend(nv);
    trim();
    return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
    check(o);
    std::size_t nv = std::max(p_.nvars(), o.p_.nvars());
    p_ = p_.extend(nv) * o.p_.extend(nv);
    trim();
    return *this;
}

std::string monomial_str(const Monomial& m, const IndetNames& names, const DiffShape& shape) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        std::string v = derivative_name(derivative_at(i + 1, shape), names);
        bool compound = v.find(' ') != std::string::npos;
        if (m[i] == 1) out += v;
        else if (compound) out += "(" + v + ")^" + std::to_string(m[i]);
        else out += v + "^" + std::to_string(m[i]);
    }
    return out;
}

std::string DiffPoly::str(const IndetNames& names) const {
    if (is_zero()) return "0";
    std::vector<const Poly::Terms::value_type*> terms;
    for (const auto& t : p_.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](auto* a, auto* b) {
        const Monomial& x = a->first;
        const Monomial& y = b->first;
        for (std::size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] > y[i];
        return false;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : terms) {
        const Rational& c = t->second;
        Rational a = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        std::string mono = monomial_str(t->first, names, shape_);
        if (mono.empty()) os << a.get_str();
        else if (a == 1) os << mono;
        else os << a.get_str() << '*' << mono;
    }
    return os.str();
}

namespace {

std::uint32_t parse_indet(const std::string& w, const DiffShape& shape, const IndetNames& names) {
    if (!names.empty()) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == w) return static_cast<std::uint32_t>(i + 1);
        throw DomainError("unknown indeterminate '" + w + "'");
    }
    if (w.size() < 2 || w[0] != 'x') throw DomainError("unknown indeterminate '" + w + "'");
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(w[i]))) throw DomainError("unknown indeterminate '" + w + "'");
    auto k = std::stoull(w.substr(1));
    if (k < 1 || k > shape.n) throw DomainError("indeterminate " + w + " outside x1..x" + std::to_string(shape.n));
    return static_cast<std::uint32_t>(k);
}

Derivative parse_words(const std::vector<std::string>& words, const DiffShape& shape, const IndetNames& names) {
    Derivative u;
    u.exps.assign(shape.m, 0);
    for (std::size_t k = 0; k + 1 < words.size(); ++k) {
        const std::string& w = words[k];
        auto caret = w.find('^');
        std::string head = w.substr(0, caret);
        if (head.size() < 2 || head[0] != 'd') throw DomainError("expected a derivation like d1, got '" + w + "'");
        for (std::size_t i = 1; i < head.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(head[i]))) throw DomainError("bad derivation '" + w + "'");
        auto i = std::stoull(head.substr(1));
        if (i < 1 || i > shape.m) throw DomainError("derivation " + head + " outside d1..d" + std::to_string(shape.m));
        std::uint64_t p = caret == std::string::npos ? 1 : std::stoull(w.substr(caret + 1));
        u.exps[i - 1] += static_cast<std::uint32_t>(p);
    }
    u.indet = parse_indet(words.back(), shape, names);
    return u;
}

}  // namespace

DiffPoly DiffPoly::parse(std::string_view text, DiffShape shape, const IndetNames& names) {
    if (!names.empty() && names.size() != shape.n) throw DomainError("name list does not match the indeterminate count");
    // Local dense numbering first, then the rank indices.
    std::vector<std::uint64_t> local;
    std::map<std::uint64_t, std::size_t> slot;
    Poly::Resolver resolve = [&](const std::vector<std::string>& words) -> std::size_t {
        auto idx = rank_index(parse_words(words, shape, names), shape);
        auto [it, fresh] = slot.emplace(idx, local.size());
        if (fresh) local.push_back(idx);
        return it->second;
    };
    Poly q = Poly::parse(text, text.size() + 1, resolve);
    std::uint64_t nv = 0;
    for (auto i : local) nv = std::max(nv, i);
    Poly r(nv);
    for (const auto& [m, c] : q.terms()) {
        Monomial t(nv, 0);
        for (std::size_t k = 0; k < local.size(); ++k) t[local[k] - 1] = m[k];
        r.add_term(t, c);
    }
    return {shape, std::move(r)};
}

std::vector<std::uint32_t> derivation_between(const Derivative& from, const Derivative& to) {
    if (!from.divides(to)) throw DomainError(derivative_str(to) + " is not a derivative of " + derivative_str(from));
    std::vector<std::uint32_t> theta(from.exps.size());
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = to.exps[i] - from.exps[i];
    return theta;
}

}  // namespace effdiff
