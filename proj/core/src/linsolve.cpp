#include "effdiff/linsolve.hpp"

#include "effdiff/errors.hpp"

namespace effdiff {

RowEchelon::IntRow RowEchelon::to_int(const SparseRow& row) {
    mpz_class l = 1;
    for (const auto& [c, v] : row)
        if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    for (const auto& [c, v] : row) {
        if (v == 0) continue;
        mpz_class x = v.get_num() * (l / v.get_den());
        out.emplace(c, x);
    }
    make_primitive(out);
    return out;
}

void RowEchelon::make_primitive(IntRow& r) {
    if (r.empty()) return;
    mpz_class g = 0;
    for (const auto& [c, v] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (r.begin()->second < 0) g = -g;
    if (g != 1)
        for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// target <- p*target - q*pivot_row, clearing column col.
void RowEchelon::eliminate(IntRow& target, const IntRow& pivot_row, std::size_t col) {
    auto it = target.find(col);
    if (it == target.end()) return;
    mpz_class p = pivot_row.at(col), q = it->second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    p /= g;
    q /= g;
    if (p != 1)
        for (auto& [c, v] : target) v *= p;
    for (const auto& [c, v] : pivot_row) {
        auto [t, fresh] = target.try_emplace(c, 0);
        t->second -= q * v;
        if (t->second == 0) target.erase(t);
    }
    make_primitive(target);
}

RowEchelon::IntRow RowEchelon::reduce(IntRow r) const {
    for (const auto& [col, prow] : rows_) {
        if (r.empty()) break;
        eliminate(r, prow, col);
    }
    return r;
}

bool RowEchelon::insert(const SparseRow& row) {
    for (const auto& [c, v] : row)
        if (c >= ncols_) throw DomainError("row entry past the column count");
    IntRow r = reduce(to_int(row));
    if (r.empty()) return false;
    std::size_t col = r.begin()->first;
    for (auto& [pc, prow] : rows_) eliminate(prow, r, col);
    rows_.emplace(col, std::move(r));
    return true;
}

bool RowEchelon::in_span(const SparseRow& row) const { return reduce(to_int(row)).empty(); }

std::optional<std::vector<Rational>> solve_linear(const std::vector<SparseRow>& A, const std::vector<Rational>& b,
                                                  std::size_t ncols) {
    if (A.size() != b.size()) throw DomainError("right-hand side length differs from the row count");
    RowEchelon E(ncols + 1);
    for (std::size_t i = 0; i < A.size(); ++i) {
        SparseRow r = A[i];
        if (b[i] != 0) r[ncols] = b[i];
        E.insert(r);
    }
    std::vector<Rational> x(ncols, 0);
    for (const auto& [col, row] : E.rows()) {
        if (col == ncols) return std::nullopt;
        auto it = row.find(ncols);
        if (it == row.end()) continue;
        x[col] = Rational(it->second, row.at(col));
        x[col].canonicalize();
    }
    return x;
}

std::vector<std::vector<Rational>> kernel_basis(const std::vector<SparseRow>& A, std::size_t ncols) {
    RowEchelon E(ncols);
    for (const auto& r : A) E.insert(r);
    std::vector<bool> pivot(ncols, false);
    for (const auto& [col, row] : E.rows()) pivot[col] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (pivot[f]) continue;
        std::vector<Rational> v(ncols, 0);
        v[f] = 1;
        for (const auto& [col, row] : E.rows()) {
            auto it = row.find(f);
            if (it == row.end()) continue;
            v[col] = Rational(-it->second, row.at(col));
            v[col].canonicalize();
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace effdiff
