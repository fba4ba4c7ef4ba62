#ifndef HRIGID_MATRIX_HPP
#define HRIGID_MATRIX_HPP

#include "rational.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hrigid {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals. Zero rows or columns are allowed.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries))
    {
        if (entries_.size() != rows_ * cols_) {
            throw std::invalid_argument("RationalMatrix: entry count does not match shape");
        }
    }

    static RationalMatrix identity(std::size_t n)
    {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Row-list constructor for tests and literals.
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows)
    {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        RationalMatrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols) throw std::invalid_argument("RationalMatrix: ragged rows");
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const Rational> entries() const noexcept { return entries_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    bool is_zero() const
    {
        for (const auto& e : entries_) {
            if (e != 0) return false;
        }
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }

    RationalVector operator*(std::span<const Rational> v) const
    {
        if (v.size() != cols_) throw std::invalid_argument("RationalMatrix: vector length mismatch");
        RationalVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Rational acc = 0;
            for (std::size_t c = 0; c < cols_; ++c) {
                if ((*this)(r, c) != 0 && v[c] != 0) acc += (*this)(r, c) * v[c];
            }
            out[r] = std::move(acc);
        }
        return out;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
    {
        if (a.cols_ != b.rows_) throw std::invalid_argument("RationalMatrix: product shape mismatch");
        RationalMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return out;
    }

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b)
    {
        a.check_same_shape(b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
        return a;
    }

    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b)
    {
        a.check_same_shape(b);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
        return a;
    }

    friend RationalMatrix operator*(const Rational& s, RationalMatrix m)
    {
        for (auto& e : m.entries_) e *= s;
        return m;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    void check_same_shape(const RationalMatrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw std::invalid_argument("RationalMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> entries_;
};

struct RrefResult {
    RationalMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
inline RrefResult rref(RationalMatrix m)
{
    RrefResult out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t r = pivot_row;
        while (r < m.rows() && m(r, col) == 0) ++r;
        if (r == m.rows()) continue;
        m.swap_rows(pivot_row, r);

        const Rational inv = 1 / m(pivot_row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(pivot_row, c) *= inv;

        for (std::size_t other = 0; other < m.rows(); ++other) {
            if (other == pivot_row || m(other, col) == 0) continue;
            const Rational factor = m(other, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (m(pivot_row, c) != 0) m(other, c) -= factor * m(pivot_row, c);
            }
        }
        out.pivot_columns.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivot_columns.size();
    out.reduced = std::move(m);
    return out;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

/// Canonical kernel basis: one vector per free column f, with a 1 at f and
/// the negated pivot-row entries back-substituted at the pivot columns.
inline std::vector<RationalVector> nullspace_basis(const RationalMatrix& m)
{
    const auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivot_columns) is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivot_columns[i]] = -r.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rows of the rref spanning the row space of `m`.
inline std::vector<RationalVector> row_space_basis(const RationalMatrix& m)
{
    const auto r = rref(m);
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < r.rank; ++i) {
        auto row = r.reduced.row(i);
        out.emplace_back(row.begin(), row.end());
    }
    return out;
}

inline RationalMatrix matrix_from_row_vectors(const std::vector<RationalVector>& rows, std::size_t cols)
{
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("matrix_from_row_vectors: length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

} // namespace hrigid

#endif
