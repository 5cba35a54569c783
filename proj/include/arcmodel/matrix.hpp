#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "arcmodel/errors.hpp"

namespace arcmodel {

/// Dense rectangular matrix over one coefficient type.
template <class C>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const C& zero)
        : rows_(rows), cols_(cols), entries_(rows * cols, zero.zero_like())
    {
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<C> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries))
    {
        require(entries_.size() == rows * cols, ErrorKind::structural,
                "matrix of shape " + std::to_string(rows) + "x" + std::to_string(cols) + " given " +
                    std::to_string(entries_.size()) + " entries");
    }

    static Matrix identity(std::size_t size, const C& one)
    {
        Matrix m(size, size, one.zero_like());
        for (std::size_t i = 0; i < size; ++i) m(i, i) = one.one_like();
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<C>& entries() const noexcept { return entries_; }
    C& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const C& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const
    {
        require(cols_ == o.rows_, ErrorKind::structural, "matrix product with mismatched inner dimensions");
        Matrix out(rows_, o.cols_, entries_.empty() ? o.entries_.front() : entries_.front());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) {
                C acc = out(i, j);
                for (std::size_t k = 0; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
                out(i, j) = acc;
            }
        return out;
    }

    /// Matrix times column vector.
    template <class V>
    std::vector<V> apply(const std::vector<V>& v) const
    {
        require(cols_ == v.size(), ErrorKind::structural, "matrix-vector product with mismatched dimensions");
        std::vector<V> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            V acc = v.front().zero_like();
            for (std::size_t k = 0; k < cols_; ++k) acc = acc + v[k] * (*this)(i, k);
            out.push_back(acc);
        }
        return out;
    }

    template <class F>
    auto map(F&& f) const
    {
        using D = decltype(f(entries_.front()));
        std::vector<D> out;
        out.reserve(entries_.size());
        for (const auto& e : entries_) out.push_back(f(e));
        return Matrix<D>(rows_, cols_, std::move(out));
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            if (!(a.entries_[i] == b.entries_[i])) return false;
        return true;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<C> entries_;
};

template <class C>
struct DetAdj {
    C det;
    Matrix<C> adjugate;
};

inline constexpr std::size_t max_determinant_size = 8;

namespace detail {

template <class C>
C cofactor_det(const Matrix<C>& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols)
{
    const std::size_t n = rows.size();
    if (n == 1) return m(rows[0], cols[0]);
    if (n == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
    // Expand along the first remaining row.
    const std::size_t r = rows.front();
    rows.erase(rows.begin());
    C acc = m(r, cols[0]).zero_like();
    for (std::size_t k = 0; k < n; ++k) {
        const C& entry = m(r, cols[k]);
        if (entry.is_zero()) continue;
        const std::size_t c = cols[k];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
        C minor = cofactor_det(m, rows, cols);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
        if (k % 2 == 0)
            acc = acc + entry * minor;
        else
            acc = acc - entry * minor;
    }
    rows.insert(rows.begin(), r);
    return acc;
}

} // namespace detail

/// Determinant by cofactor expansion and the adjugate (transposed cofactor
/// matrix), so that M * adj = adj * M = det * Id. A 1x1 matrix has adjugate (1).
template <class C>
DetAdj<C> det_and_adjugate(const Matrix<C>& m)
{
    require(m.rows() == m.cols(), ErrorKind::structural,
            "determinant of a non-square " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
    const std::size_t n = m.rows();
    require(n >= 1 && n <= max_determinant_size, ErrorKind::structural,
            "determinant size " + std::to_string(n) + " outside 1.." + std::to_string(max_determinant_size));
    const C& any = m(0, 0);
    if (n == 1) return {m(0, 0), Matrix<C>::identity(1, any)};

    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<std::size_t> rows = all;
    std::vector<std::size_t> cols = all;
    C det = detail::cofactor_det(m, rows, cols);

    Matrix<C> adj(n, n, any);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rr;
            std::vector<std::size_t> cc;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) rr.push_back(k);
                if (k != j) cc.push_back(k);
            }
            C minor = detail::cofactor_det(m, rr, cc);
            adj(j, i) = (i + j) % 2 == 0 ? minor : -minor;
        }
    return {det, adj};
}

} // namespace arcmodel
