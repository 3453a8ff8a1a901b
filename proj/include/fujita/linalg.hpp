#pragma once

#include "fujita/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fujita {

/// Dense rational matrix, row-major. Represents a linear map
/// Q^cols -> Q^rows (pullbacks on N^1, pushforwards on N_1).
class LinMapQ {
public:
    LinMapQ() = default;
    LinMapQ(std::size_t rows, std::size_t cols);

    static LinMapQ identity(std::size_t n);
    /// All rows must have the same length; an empty list gives a 0 x cols map.
    static LinMapQ from_rows(const std::vector<VecQ>& rows, std::size_t cols);
    static LinMapQ from_columns(const std::vector<VecQ>& columns, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    VecQ row(std::size_t r) const;
    VecQ column(std::size_t c) const;
    std::vector<VecQ> row_list() const;

    VecQ apply(const VecQ& v) const;
    LinMapQ transpose() const;
    /// (*this) o rhs
    LinMapQ compose(const LinMapQ& rhs) const;

    bool is_integral() const;

    bool operator==(const LinMapQ&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Reduced row echelon form of the given rows (all of length `dim`).
/// Zero rows are dropped; `pivots[i]` is the pivot column of row i.
struct Echelon {
    std::vector<VecQ> rows;
    std::vector<std::size_t> pivots;
};
Echelon rref(std::vector<VecQ> rows, std::size_t dim);

int rank(const std::vector<VecQ>& rows, std::size_t dim);

/// Basis of { x : <r, x> = 0 for all rows r }, one vector per free column,
/// in the standard RREF parametrisation.
std::vector<VecQ> nullspace(const std::vector<VecQ>& rows, std::size_t dim);

/// Canonical basis of span(vectors): RREF rows scaled to primitive integers.
/// Two lists span the same subspace iff their canonical bases are equal.
std::vector<VecQ> canonical_span_basis(const std::vector<VecQ>& vectors, std::size_t dim);

/// Orthogonal projection of v onto the orthogonal complement of span(basis).
VecQ project_out(const VecQ& v, const std::vector<VecQ>& basis);

Rat determinant(const LinMapQ& m);
std::optional<LinMapQ> inverse(const LinMapQ& m);

/// Some solution of m x = b, or nullopt when the system is inconsistent.
std::optional<VecQ> solve(const LinMapQ& m, const VecQ& b);

/// Row-style Hermite normal form of an integer matrix: H = U * A with U
/// unimodular, H in row echelon form with positive pivots and the entries
/// above each pivot reduced into [0, pivot).
struct HermiteForm {
    LinMapQ H;
    LinMapQ U;
    std::vector<std::size_t> pivots;
};
HermiteForm hermite_form(const LinMapQ& A);

} // namespace fujita
