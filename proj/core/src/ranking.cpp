#include "effdiff/ranking.hpp"

#include <cctype>
#include <sstream>

#include "effdiff/errors.hpp"

namespace effdiff {

std::uint64_t Derivative::order() const {
    std::uint64_t s = 0;
    for (auto e : exps) s += e;
    return s;
}

bool Derivative::divides(const Derivative& other) const {
    if (indet != other.indet || exps.size() != other.exps.size()) return false;
    for (std::size_t i = 0; i < exps.size(); ++i)
        if (exps[i] > other.exps[i]) return false;
    return true;
}

bool Derivative::is_proper_derivative_of(const Derivative& base) const {
    return base.divides(*this) && !(base == *this);
}

std::uint64_t count_vectors(std::uint64_t s, std::uint32_t dims) {
    if (dims == 0) return s == 0 ? 1 : 0;
    // C(s + dims - 1, dims - 1)
    unsigned __int128 r = 1;
    for (std::uint32_t k = 1; k < dims; ++k) {
        r = r * (s + k) / k;
        if (r > UINT64_MAX) throw DomainError("derivative count overflows 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

namespace {

void check_shape(const Derivative& u, const DiffShape& shape) {
    if (u.indet < 1 || u.indet > shape.n) throw DomainError("indeterminate index out of range");
    if (u.exps.size() != shape.m) throw DomainError("derivative has wrong number of derivations");
}

// Position of exps among vectors of the same order, lexicographically ascending.
std::uint64_t lex_position(const std::vector<std::uint32_t>& exps) {
    std::uint64_t rem = 0;
    for (auto e : exps) rem += e;
    std::uint64_t pos = 0;
    auto m = static_cast<std::uint32_t>(exps.size());
    for (std::uint32_t j = 0; j < m; ++j) {
        for (std::uint64_t v = 0; v < exps[j]; ++v) pos += count_vectors(rem - v, m - j - 1);
        rem -= exps[j];
    }
    return pos;
}

}  // namespace

std::uint64_t rank_index(const Derivative& u, const DiffShape& shape) {
    check_shape(u, shape);
    std::uint64_t order = u.order();
    std::uint64_t below = order == 0 ? 0 : shape.n * count_vectors(order - 1, shape.m + 1);
    return below + shape.n * lex_position(u.exps) + u.indet;
}

Derivative derivative_at(std::uint64_t index, const DiffShape& shape) {
    if (index == 0) throw DomainError("ranking indices start at 1");
    std::uint64_t rest = index - 1;
    std::uint64_t order = 0;
    for (;;) {
        std::uint64_t here = shape.n * count_vectors(order, shape.m);
        if (rest < here) break;
        rest -= here;
        ++order;
    }
    Derivative u;
    u.indet = static_cast<std::uint32_t>(rest % shape.n) + 1;
    std::uint64_t pos = rest / shape.n;
    u.exps.assign(shape.m, 0);
    std::uint64_t rem = order;
    for (std::uint32_t j = 0; j < shape.m; ++j) {
        if (j + 1 == shape.m) {
            u.exps[j] = static_cast<std::uint32_t>(rem);
            break;
        }
        std::uint64_t v = 0;
        for (;; ++v) {
            std::uint64_t c = count_vectors(rem - v, shape.m - j - 1);
            if (pos < c) break;
            pos -= c;
        }
        u.exps[j] = static_cast<std::uint32_t>(v);
        rem -= v;
    }
    return u;
}

int rank_compare(const Derivative& a, const Derivative& b) {
    auto oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob ? -1 : 1;
    for (std::size_t i = 0; i < a.exps.size() && i < b.exps.size(); ++i)
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
    if (a.indet != b.indet) return a.indet < b.indet ? -1 : 1;
    return 0;
}

Derivative common_derivative(const Derivative& a, const Derivative& b) {
    if (a.indet != b.indet || a.exps.size() != b.exps.size())
        throw DomainError("derivatives of different indeterminates share no common derivative");
    Derivative c = a;
    for (std::size_t i = 0; i < c.exps.size(); ++i) c.exps[i] = std::max(a.exps[i], b.exps[i]);
    return c;
}

std::string derivative_str(const Derivative& u) {
    std::string out;
    for (std::size_t i = 0; i < u.exps.size(); ++i) {
        if (u.exps[i] == 0) continue;
        out += "d" + std::to_string(i + 1);
        if (u.exps[i] > 1) out += "^" + std::to_string(u.exps[i]);
        out += " ";
    }
    return out + "x" + std::to_string(u.indet);
}

Derivative parse_derivative(const std::string& text, const DiffShape& shape) {
    Derivative u;
    u.exps.assign(shape.m, 0);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&]() -> std::uint64_t {
        std::size_t s = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (s == i) throw DomainError("derivative syntax: expected a number in '" + text + "'");
        return std::stoull(text.substr(s, i - s));
    };
    for (;;) {
        skip();
        if (i >= text.size()) throw DomainError("derivative syntax: missing indeterminate in '" + text + "'");
        char c = text[i++];
        if (c == 'd') {
            auto k = number();
            if (k < 1 || k > shape.m) throw DomainError("derivation index out of range in '" + text + "'");
            std::uint64_t p = 1;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                p = number();
            }
            u.exps[k - 1] += static_cast<std::uint32_t>(p);
        } else if (c == 'x') {
            auto k = number();
            if (k < 1 || k > shape.n) throw DomainError("indeterminate index out of range in '" + text + "'");
            u.indet = static_cast<std::uint32_t>(k);
            skip();
            if (i != text.size()) throw DomainError("derivative syntax: trailing input in '" + text + "'");
            return u;
        } else {
            throw DomainError("derivative syntax: unexpected '" + std::string(1, c) + "' in '" + text + "'");
        }
    }
}

}  // namespace effdiff
