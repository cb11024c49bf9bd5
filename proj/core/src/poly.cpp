#include "effdiff/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "effdiff/errors.hpp"

namespace effdiff {

std::uint64_t monomial_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    auto da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    return a < b;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Poly Poly::var(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DomainError("variable index out of range");
    Monomial m(nvars, 0);
    m[i] = 1;
    return monomial(nvars, std::move(m));
}

Poly Poly::monomial(std::size_t nvars, Monomial m, const Rational& c) {
    if (m.size() != nvars) throw DomainError("monomial length does not match the ring");
    Poly p(nvars);
    p.add_term(m, c);
    return p;
}

void Poly::check_ring(const Poly& o) const {
    if (nvars_ != o.nvars_)
        throw DomainError("ring mismatch: " + std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) +
                          " variables");
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && monomial_degree(terms_.begin()->first) == 0);
}

std::uint64_t Poly::total_degree() const {
    return terms_.empty() ? 0 : monomial_degree(terms_.rbegin()->first);
}

std::uint32_t Poly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw DomainError("leading monomial of zero");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw DomainError("leading coefficient of zero");
    return terms_.rbegin()->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) throw DomainError("monomial length does not match the ring");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::operator-() const { return scale(-1); }

Poly Poly::scale(const Rational& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

Poly Poly::mul_monomial(const Monomial& mono, const Rational& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) {
        Monomial t = m;
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += mono[i];
        r.terms_.emplace(std::move(t), x * c);
    }
    return r;
}

Poly Poly::pow(std::uint64_t e) const {
    Poly result = constant(nvars_, 1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Poly Poly::substitute(std::size_t var, const Poly& by) const {
    check_ring(by);
    if (var >= nvars_) throw DomainError("variable index out of range");
    Poly r(nvars_);
    std::vector<Poly> powers{constant(nvars_, 1)};
    for (const auto& [m, c] : terms_) {
        while (powers.size() <= m[var]) powers.push_back(powers.back() * by);
        Monomial rest = m;
        rest[var] = 0;
        r += powers[m[var]].mul_monomial(rest, c);
    }
    return r;
}

Poly Poly::partial(std::size_t var) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial t = m;
        --t[var];
        r.add_term(t, c * m[var]);
    }
    return r;
}

Poly Poly::coeff_in(std::size_t var, std::uint32_t k) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] != k) continue;
        Monomial t = m;
        t[var] = 0;
        r.add_term(t, c);
    }
    return r;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw DomainError("evaluation point has the wrong length");
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
        s += t;
    }
    return s;
}

Poly Poly::extend(std::size_t nvars) const {
    if (nvars < nvars_) throw DomainError("cannot shrink a polynomial ring");
    Poly r(nvars);
    for (const auto& [m, c] : terms_) {
        Monomial t = m;
        t.resize(nvars, 0);
        r.terms_.emplace(std::move(t), c);
    }
    return r;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    auto d = monomial_degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (monomial_degree(m) != d) return false;
    return true;
}

std::string Poly::str(const Namer& name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        bool constant_term = monomial_degree(m) == 0;
        bool wrote = false;
        if (a != 1 || constant_term) {
            os << a.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (wrote) os << '*';
            std::string v = name(i);
            bool compound = v.find(' ') != std::string::npos;
            if (m[i] == 1) os << v;
            else if (compound) os << '(' << v << ")^" << m[i];
            else os << v << '^' << m[i];
            wrote = true;
        }
    }
    return os.str();
}

namespace {

struct PolyReader {
    std::string_view s;
    std::size_t nvars;
    const Poly::Resolver& resolve;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw DomainError("polynomial '" + std::string(s) + "': " + msg + " at offset " + std::to_string(pos));
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool at_letter() {
        skip();
        return pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_');
    }
    std::string digits() {
        skip();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected digits");
        return std::string(s.substr(start, pos - start));
    }
    std::uint64_t exponent() {
        std::string d = digits();
        if (d.size() > 9) fail("exponent too large");
        return std::stoull(d);
    }

    Poly expr() {
        Poly r(nvars);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Poly t = term();
        r += neg ? -t : t;
        for (;;) {
            if (eat('+')) r += term();
            else if (eat('-')) r -= term();
            else return r;
        }
    }
    Poly term() {
        Poly r = factor();
        while (eat('*')) r *= factor();
        return r;
    }
    Poly factor() {
        Poly b = primary();
        if (eat('^')) return b.pow(exponent());
        return b;
    }
    Poly primary() {
        skip();
        if (eat('(')) {
            Poly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num = digits();
            if (eat('/')) num += "/" + digits();
            Rational q(num);
            q.canonicalize();
            return Poly::constant(nvars, q);
        }
        if (!at_letter()) fail(pos < s.size() ? std::string("unexpected '") + s[pos] + "'" : "unexpected end");
        std::vector<std::string> words;
        std::uint64_t power = 1;
        for (;;) {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string w(s.substr(start, pos - start));
            std::size_t save = pos;
            skip();
            std::uint64_t e = 1;
            bool has_exp = false;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                e = exponent();
                has_exp = true;
            } else {
                pos = save;
            }
            if (at_letter()) {
                words.push_back(has_exp ? w + "^" + std::to_string(e) : w);
                continue;
            }
            words.push_back(w);
            power = e;
            break;
        }
        std::size_t v = resolve(words);
        if (v >= nvars) fail("variable out of range");
        return Poly::var(nvars, v).pow(power);
    }
};

}  // namespace

Poly Poly::parse(std::string_view text, std::size_t nvars) {
    Resolver plain = [nvars, text](const std::vector<std::string>& words) -> std::size_t {
        if (words.size() != 1 || words[0].size() < 2 || words[0][0] != 'x')
            throw DomainError("polynomial '" + std::string(text) + "': bad variable");
        for (std::size_t i = 1; i < words[0].size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(words[0][i])))
                throw DomainError("polynomial '" + std::string(text) + "': bad variable " + words[0]);
        std::size_t k = std::stoul(words[0].substr(1));
        if (k < 1 || k > nvars) throw DomainError("variable " + words[0] + " outside x1..x" + std::to_string(nvars));
        return k - 1;
    };
    return parse(text, nvars, plain);
}

Poly Poly::parse(std::string_view text, std::size_t nvars, const Resolver& resolve) {
    PolyReader r{text, nvars, resolve};
    Poly p = r.expr();
    r.skip();
    if (r.pos != text.size()) r.fail("trailing input");
    return p;
}

std::vector<Monomial> monomials_up_to(std::size_t n, std::uint64_t d) {
    std::vector<Monomial> out;
    Monomial m(n, 0);
    // Enumerate by degree, each degree in ascending lexicographic order.
    for (std::uint64_t deg = 0; deg <= d; ++deg) {
        std::vector<Monomial> level;
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
            if (i + 1 == n) {
                m[i] = static_cast<std::uint32_t>(left);
                level.push_back(m);
                return;
            }
            for (std::uint64_t e = 0; e <= left; ++e) {
                m[i] = static_cast<std::uint32_t>(e);
                rec(i + 1, left - e);
            }
        };
        if (n == 0) {
            if (deg == 0) out.push_back({});
            continue;
        }
        rec(0, deg);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace effdiff
