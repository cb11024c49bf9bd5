#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "effdiff/poly.hpp"

namespace effdiff {

using SparseRow = std::map<std::size_t, Rational>;

// Reduced row echelon form kept with primitive integer rows.
class RowEchelon {
public:
    explicit RowEchelon(std::size_t ncols) : ncols_(ncols) {}

    // Adds a row; false when it lies in the span of the rows so far.
    bool insert(const SparseRow& row);
    bool in_span(const SparseRow& row) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }

    // Pivot column -> integer row (pivot entry positive).
    const std::map<std::size_t, std::map<std::size_t, mpz_class>>& rows() const { return rows_; }

private:
    using IntRow = std::map<std::size_t, mpz_class>;
    std::size_t ncols_;
    std::map<std::size_t, IntRow> rows_;

    IntRow reduce(IntRow r) const;
    static IntRow to_int(const SparseRow& row);
    static void make_primitive(IntRow& r);
    static void eliminate(IntRow& target, const IntRow& pivot_row, std::size_t col);
};

// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_linear(const std::vector<SparseRow>& A, const std::vector<Rational>& b,
                                                  std::size_t ncols);

// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<Rational>> kernel_basis(const std::vector<SparseRow>& A, std::size_t ncols);

}  // namespace effdiff
