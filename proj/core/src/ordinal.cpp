#include "effdiff/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "effdiff/errors.hpp"

namespace effdiff {

namespace {

const std::shared_ptr<const std::vector<OrdTerm>>& empty_terms() {
    static const auto e = std::make_shared<const std::vector<OrdTerm>>();
    return e;
}

}  // namespace

Ordinal::Ordinal() : terms_(empty_terms()) {}

Ordinal::Ordinal(unsigned long n) : Ordinal(BigNat(n)) {}

Ordinal::Ordinal(const BigNat& n) : terms_(empty_terms()) {
    if (n < 0) throw DomainError("ordinal from negative integer");
    if (n > 0) terms_ = std::make_shared<const std::vector<OrdTerm>>(std::vector<OrdTerm>{{Ordinal(), n}});
}

Ordinal::Ordinal(std::vector<OrdTerm> terms) : terms_(empty_terms()) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coef <= 0) throw DomainError("ordinal coefficient must be positive");
        if (i > 0 && !(terms[i].exp < terms[i - 1].exp))
            throw DomainError("ordinal exponents must strictly descend");
    }
    if (!terms.empty()) terms_ = std::make_shared<const std::vector<OrdTerm>>(std::move(terms));
}

Ordinal Ordinal::trusted(std::vector<OrdTerm> terms) {
    Ordinal o;
    if (!terms.empty()) o.terms_ = std::make_shared<const std::vector<OrdTerm>>(std::move(terms));
    return o;
}

Ordinal Ordinal::omega() { return omega_pow(Ordinal(1UL)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, const BigNat& c) {
    if (c == 0) return Ordinal();
    return Ordinal(std::vector<OrdTerm>{{e, c}});
}

const std::vector<OrdTerm>& Ordinal::terms() const { return *terms_; }
bool Ordinal::is_zero() const { return terms_->empty(); }
bool Ordinal::is_finite() const { return is_zero() || (terms_->size() == 1 && terms_->front().exp.is_zero()); }
bool Ordinal::is_successor() const { return !is_zero() && terms_->back().exp.is_zero(); }
bool Ordinal::is_limit() const { return !is_zero() && !is_successor(); }

BigNat Ordinal::finite_value() const {
    if (is_zero()) return 0;
    if (!is_finite()) throw DomainError("ordinal " + str() + " is not finite");
    return terms_->front().coef;
}

Ordinal Ordinal::max_exp() const { return is_zero() ? Ordinal() : terms_->front().exp; }
Ordinal Ordinal::min_exp() const { return is_zero() ? Ordinal() : terms_->back().exp; }

Ordinal Ordinal::predecessor() const {
    if (!is_successor()) throw DomainError("predecessor of a non-successor ordinal");
    return fundamental(0);
}

Ordinal Ordinal::fundamental(const BigNat& x) const {
    if (is_zero()) throw DomainError("fundamental sequence of 0");
    std::vector<OrdTerm> out(terms_->begin(), terms_->end() - 1);
    const OrdTerm& last = terms_->back();
    if (last.coef > 1) out.push_back({last.exp, last.coef - 1});
    if (!last.exp.is_zero() && x > 0) {
        Ordinal e = last.exp.fundamental(x);
        out.push_back({e, x});
    }
    return trusted(std::move(out));
}

BigNat Ordinal::coord_bound() const {
    BigNat best = 0;
    for (const auto& t : *terms_) {
        if (t.coef > best) best = t.coef;
        BigNat e = t.exp.coord_bound();
        if (e > best) best = e;
    }
    return best;
}

std::size_t Ordinal::depth() const {
    std::size_t d = 0;
    for (const auto& t : *terms_) d = std::max(d, t.exp.depth() + 1);
    return d;
}

std::size_t Ordinal::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& t : *terms_) {
        h ^= t.exp.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::string>{}(t.coef.get_str(16)) + (h << 6) + (h >> 2);
    }
    return h;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    if (a.terms_ == b.terms_) return std::strong_ordering::equal;
    const auto& x = *a.terms_;
    const auto& y = *b.terms_;
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = x[i].exp <=> y[i].exp;
        if (c != 0) return c;
        int k = cmp(x[i].coef, y[i].coef);
        if (k != 0) return k < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

Cmp compare(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    return c < 0 ? Cmp::less : (c > 0 ? Cmp::greater : Cmp::equal);
}

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::less: return "less";
        case Cmp::equal: return "equal";
        case Cmp::greater: return "greater";
    }
    return "?";
}

namespace {

struct ExpDesc {
    bool operator()(const Ordinal& a, const Ordinal& b) const { return b < a; }
};
using TermMap = std::map<Ordinal, BigNat, ExpDesc>;

Ordinal from_map(const TermMap& m) {
    std::vector<OrdTerm> out;
    for (const auto& [e, c] : m)
        if (c != 0) out.push_back({e, c});
    return Ordinal(std::move(out));
}

}  // namespace

Ordinal natural_sum(const Ordinal& a, const Ordinal& b) {
    TermMap m;
    for (const auto& t : a.terms()) m[t.exp] += t.coef;
    for (const auto& t : b.terms()) m[t.exp] += t.coef;
    return from_map(m);
}

Ordinal natural_prod(const Ordinal& a, const Ordinal& b) {
    TermMap m;
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) m[natural_sum(s.exp, t.exp)] += s.coef * t.coef;
    return from_map(m);
}

Ordinal left_sum(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.terms().front().exp;
    std::vector<OrdTerm> out;
    BigNat carry = 0;
    for (const auto& t : a.terms()) {
        if (lead < t.exp) out.push_back(t);
        else if (t.exp == lead) carry = t.coef;
        else break;
    }
    bool first = true;
    for (const auto& t : b.terms()) {
        out.push_back(first ? OrdTerm{t.exp, t.coef + carry} : t);
        first = false;
    }
    return Ordinal(std::move(out));
}

namespace {

std::string print(const Ordinal& a, bool top) {
    if (a.is_zero()) return "0";
    std::string out;
    const char* sep = top ? " + " : "+";
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += sep;
        if (t.exp.is_zero()) {
            out += t.coef.get_str();
            continue;
        }
        out += "w";
        if (t.exp == Ordinal(1UL)) {
        } else if (t.exp.is_finite()) {
            out += "^" + t.exp.finite_value().get_str();
        } else if (t.exp == Ordinal::omega()) {
            out += "^w";
        } else {
            out += "^(" + print(t.exp, false) + ")";
        }
        if (t.coef != 1) out += "*" + t.coef.get_str();
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Ordinal run() {
        Ordinal r = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw DomainError("ordinal syntax: " + why + " at offset " + std::to_string(pos_) + " in '" +
                          std::string(s_) + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    BigNat natural() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a natural number");
        return BigNat(std::string(s_.substr(start, pos_ - start)));
    }
    Ordinal expr() {
        Ordinal r = term();
        while (eat('+')) r = left_sum(r, term());
        return r;
    }
    Ordinal term() {
        Ordinal base = atom();
        if (eat('*')) {
            BigNat c = natural();
            if (base.is_zero() || c == 0) return Ordinal();
            if (base.terms().size() != 1) fail("coefficient on a compound ordinal");
            return Ordinal::omega_pow(base.terms().front().exp, base.terms().front().coef * c);
        }
        return base;
    }
    Ordinal exponent() {
        if (eat('(')) {
            Ordinal e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        skip();
        if (pos_ < s_.size() && (s_[pos_] == 'w' || s_[pos_] == 'W')) {
            ++pos_;
            if (eat('^')) return Ordinal::omega_pow(exponent());
            return Ordinal::omega();
        }
        return Ordinal(natural());
    }
    Ordinal atom() {
        skip();
        if (eat('(')) {
            Ordinal e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'w' || s_[pos_] == 'W')) {
            ++pos_;
            if (eat('^')) return Ordinal::omega_pow(exponent());
            return Ordinal::omega();
        }
        return Ordinal(natural());
    }
};

}  // namespace

std::string Ordinal::str() const { return print(*this, true); }

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace effdiff
