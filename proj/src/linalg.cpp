#include "fujita/linalg.hpp"

#include "fujita/errors.hpp"

#include <algorithm>
#include <utility>

namespace fujita {

LinMapQ::LinMapQ(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0))
{
}

LinMapQ LinMapQ::identity(std::size_t n)
{
    LinMapQ m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

LinMapQ LinMapQ::from_rows(const std::vector<VecQ>& rows, std::size_t cols)
{
    LinMapQ m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require_length(rows[r], cols, "matrix row");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

LinMapQ LinMapQ::from_columns(const std::vector<VecQ>& columns, std::size_t rows)
{
    LinMapQ m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require_length(columns[c], rows, "matrix column");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

VecQ LinMapQ::row(std::size_t r) const
{
    return VecQ(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

VecQ LinMapQ::column(std::size_t c) const
{
    VecQ v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v[r] = (*this)(r, c);
    return v;
}

std::vector<VecQ> LinMapQ::row_list() const
{
    std::vector<VecQ> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out.push_back(row(r));
    return out;
}

VecQ LinMapQ::apply(const VecQ& v) const
{
    require_length(v, cols_, "linear map argument");
    VecQ out(rows_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r] += (*this)(r, c) * v[c];
    return out;
}

LinMapQ LinMapQ::transpose() const
{
    LinMapQ t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

LinMapQ LinMapQ::compose(const LinMapQ& rhs) const
{
    if (cols_ != rhs.rows_)
        throw InputError("cannot compose a " + std::to_string(rows_) + "x" + std::to_string(cols_) + " map with a "
                         + std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_) + " map");
    LinMapQ out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (sgn((*this)(r, k)) == 0)
                continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c)
                out(r, c) += (*this)(r, k) * rhs(k, c);
        }
    return out;
}

bool LinMapQ::is_integral() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rat& x) { return x.get_den() == 1; });
}

Echelon rref(std::vector<VecQ> rows, std::size_t dim)
{
    for (const VecQ& r : rows)
        require_length(r, dim, "row reduction");
    Echelon out;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < dim && lead < rows.size(); ++col) {
        std::size_t pivot = lead;
        while (pivot < rows.size() && sgn(rows[pivot][col]) == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[lead], rows[pivot]);
        const Rat inv = 1 / rows[lead][col];
        for (Rat& x : rows[lead])
            x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || sgn(rows[r][col]) == 0)
                continue;
            const Rat factor = rows[r][col];
            for (std::size_t c = col; c < dim; ++c)
                rows[r][c] -= factor * rows[lead][c];
        }
        out.pivots.push_back(col);
        ++lead;
    }
    rows.resize(lead);
    out.rows = std::move(rows);
    return out;
}

int rank(const std::vector<VecQ>& rows, std::size_t dim)
{
    return static_cast<int>(rref(rows, dim).pivots.size());
}

std::vector<VecQ> nullspace(const std::vector<VecQ>& rows, std::size_t dim)
{
    const Echelon e = rref(rows, dim);
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t p : e.pivots)
        is_pivot[p] = true;
    std::vector<VecQ> basis;
    for (std::size_t free = 0; free < dim; ++free) {
        if (is_pivot[free])
            continue;
        VecQ v = zeros(dim);
        v[free] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<VecQ> canonical_span_basis(const std::vector<VecQ>& vectors, std::size_t dim)
{
    std::vector<VecQ> basis = rref(vectors, dim).rows;
    for (VecQ& v : basis)
        v = primitive(v);
    return basis;
}

VecQ project_out(const VecQ& v, const std::vector<VecQ>& basis)
{
    if (basis.empty())
        return v;
    // Gram-Schmidt on the basis, then subtract the components.
    std::vector<VecQ> ortho;
    for (const VecQ& b : basis) {
        VecQ w = b;
        for (const VecQ& o : ortho)
            w = w - (dot(w, o) / dot(o, o)) * o;
        if (!is_zero(w))
            ortho.push_back(std::move(w));
    }
    VecQ out = v;
    for (const VecQ& o : ortho)
        out = out - (dot(out, o) / dot(o, o)) * o;
    return out;
}

Rat determinant(const LinMapQ& m)
{
    if (m.rows() != m.cols())
        throw InputError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<VecQ> a = m.row_list();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(a[pivot][col]) == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(a[r][col]) == 0)
                continue;
            const Rat factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

std::optional<LinMapQ> inverse(const LinMapQ& m)
{
    if (m.rows() != m.cols())
        throw InputError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<VecQ> aug;
    for (std::size_t r = 0; r < n; ++r) {
        VecQ row = m.row(r);
        for (std::size_t c = 0; c < n; ++c)
            row.push_back(r == c ? Rat(1) : Rat(0));
        aug.push_back(std::move(row));
    }
    const Echelon e = rref(aug, 2 * n);
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        return std::nullopt;
    LinMapQ inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = e.rows[r][n + c];
    return inv;
}

std::optional<VecQ> solve(const LinMapQ& m, const VecQ& b)
{
    require_length(b, m.rows(), "right-hand side");
    const std::size_t n = m.cols();
    std::vector<VecQ> aug;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        VecQ row = m.row(r);
        row.push_back(b[r]);
        aug.push_back(std::move(row));
    }
    const Echelon e = rref(aug, n + 1);
    VecQ x = zeros(n);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == n)
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][n];
    }
    return x;
}

namespace {

Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Replace rows (i, j) of both matrices by (x*ri + y*rj, -v*ri + u*rj) where
// x*a + y*b = g, u = a/g, v = b/g. The 2x2 block has determinant 1.
void combine_rows(std::vector<std::vector<Int>>& m, std::size_t i, std::size_t j, const Int& x, const Int& y,
                  const Int& u, const Int& v)
{
    for (std::size_t c = 0; c < m[i].size(); ++c) {
        const Int ri = m[i][c], rj = m[j][c];
        m[i][c] = x * ri + y * rj;
        m[j][c] = u * rj - v * ri;
    }
}

} // namespace

HermiteForm hermite_form(const LinMapQ& A)
{
    if (!A.is_integral())
        throw InputError("Hermite normal form needs an integer matrix");
    const std::size_t rows = A.rows(), cols = A.cols();
    std::vector<std::vector<Int>> h(rows, std::vector<Int>(cols)), u(rows, std::vector<Int>(rows, 0));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c)
            h[r][c] = A(r, c).get_num();
        u[r][r] = 1;
    }

    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (h[i][c] == 0)
                continue;
            Int g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h[r][c].get_mpz_t(), h[i][c].get_mpz_t());
            const Int a_g = h[r][c] / g, b_g = h[i][c] / g;
            combine_rows(h, r, i, x, y, a_g, b_g);
            combine_rows(u, r, i, x, y, a_g, b_g);
        }
        if (h[r][c] == 0)
            continue;
        if (h[r][c] < 0) {
            for (auto& e : h[r])
                e = -e;
            for (auto& e : u[r])
                e = -e;
        }
        for (std::size_t k = 0; k < r; ++k) {
            const Int q = floor_div(h[k][c], h[r][c]);
            if (q == 0)
                continue;
            for (std::size_t cc = 0; cc < cols; ++cc)
                h[k][cc] -= q * h[r][cc];
            for (std::size_t cc = 0; cc < rows; ++cc)
                u[k][cc] -= q * u[r][cc];
        }
        pivots.push_back(c);
        ++r;
    }

    HermiteForm out{LinMapQ(rows, cols), LinMapQ(rows, rows), std::move(pivots)};
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < cols; ++c)
            out.H(i, c) = h[i][c];
        for (std::size_t c = 0; c < rows; ++c)
            out.U(i, c) = u[i][c];
    }
    return out;
}

} // namespace fujita
