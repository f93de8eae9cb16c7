#pragma once

// Exact integer linear algebra: Smith normal form and cokernels.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reeb/error.hpp"
#include "reeb/numeric.hpp"

namespace reeb {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw StructuralError("ragged matrix literal");
            for (long long v : r)
                data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix diagonal(const std::vector<Integer>& d)
    {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool symmetric() const
    {
        if (!square())
            return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i))
                    return false;
        return true;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw PreconditionError("matrix product dimension mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += x * b(k, j);
            }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }
    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) += k * (*this)(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const Integer& k)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k in
/// invariant-factor form (t_i >= 2, t_i | t_{i+1}).
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }

    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

inline std::string to_string(const AbelianInvariants& g)
{
    if (g.trivial())
        return "0";
    std::string out;
    auto append = [&](const std::string& s) {
        if (!out.empty())
            out += " + ";
        out += s;
    };
    if (g.free_rank == 1)
        append("Z");
    else if (g.free_rank > 1)
        append("Z^" + std::to_string(g.free_rank));
    for (const auto& t : g.torsion)
        append("Z/" + t.str());
    return out;
}

struct SmithDecomposition {
    IntMatrix left;      // U, rows x rows, unimodular
    IntMatrix diagonal;  // S = U * A * V
    IntMatrix right;     // V, cols x cols, unimodular
};

/// Computes unimodular U, V with U*A*V = S diagonal, S non-negative and
/// d_1 | d_2 | ... with zeros last. Pivots on the smallest nonzero magnitude.
inline SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    IntMatrix s = a;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        s.add_row(dst, src, k);
        u.add_row(dst, src, k);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& k) {
        s.add_col(dst, src, k);
        v.add_col(dst, src, k);
    };
    auto move_to_pivot = [&](std::size_t t, std::size_t i, std::size_t j) {
        if (i != t) {
            s.swap_rows(i, t);
            u.swap_rows(i, t);
        }
        if (j != t) {
            s.swap_cols(j, t);
            v.swap_cols(j, t);
        }
    };

    const std::size_t diag = std::min(rows, cols);
    for (std::size_t t = 0; t < diag; ++t) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (s(i, j) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
                    best = {i, j};
        if (!best)
            break;
        move_to_pivot(t, best->first, best->second);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0)
                    continue;
                row_op(i, t, -(s(i, t) / s(t, t)));
                if (s(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0)
                    continue;
                col_op(j, t, -(s(t, j) / s(t, t)));
                if (s(t, j) != 0)
                    clean = false;
            }
            if (!clean) {
                // A remainder smaller than the pivot survived; promote it.
                std::pair<std::size_t, std::size_t> pos{t, t};
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (s(i, t) != 0 && abs(s(i, t)) < abs(s(pos.first, pos.second)))
                        pos = {i, t};
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(t, j) != 0 && abs(s(t, j)) < abs(s(pos.first, pos.second)))
                        pos = {t, j};
                move_to_pivot(t, pos.first, pos.second);
                continue;
            }
            std::optional<std::size_t> offender;
            for (std::size_t i = t + 1; i < rows && !offender; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        offender = i;
                        break;
                    }
            if (!offender)
                break;
            row_op(t, *offender, 1);
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    return {std::move(u), std::move(s), std::move(v)};
}

/// Invariants of Z^n / A Z^n for a square A.
inline AbelianInvariants cokernel_invariants(const IntMatrix& a)
{
    if (!a.square())
        throw PreconditionError("cokernel_invariants needs a square matrix, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    auto snf = smith_normal_form(a);
    AbelianInvariants out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Integer& d = snf.diagonal(i, i);
        if (d == 0)
            ++out.free_rank;
        else if (d != 1)
            out.torsion.push_back(d);
    }
    return out;
}

/// Direct sum, renormalized to invariant-factor form.
inline AbelianInvariants direct_sum(const AbelianInvariants& a, const AbelianInvariants& b)
{
    std::vector<Integer> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    AbelianInvariants out = cokernel_invariants(IntMatrix::diagonal(orders));
    out.free_rank += a.free_rank + b.free_rank;
    return out;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& a)
{
    if (!a.square())
        throw PreconditionError("determinant needs a square matrix");
    const std::size_t n = a.rows();
    IntMatrix m = a;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0)
                ++r;
            if (r == n)
                return 0;
            m.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return n == 0 ? Integer(1) : sign * m(n - 1, n - 1);
}

inline AbelianInvariants free_abelian(std::size_t rank) { return {rank, {}}; }

}  // namespace reeb
