#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "glmy/errors.hpp"
#include "glmy/rational.hpp"

namespace glmy {

/// Dense row-major matrix of exact rationals. Zero-sized dimensions are
/// valid and behave as the zero map between the corresponding spaces.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Row-wise integer literal, mainly for tests and golden values.
    static RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        RationalMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw InvalidArgument("ragged matrix literal");
            std::size_t j = 0;
            for (long v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t rows) {
        RationalMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw InvalidArgument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector column(std::size_t j) const {
        RationalVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    RationalVector row(std::size_t i) const {
        return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    RationalVector apply(std::span<const Rational> x) const {
        if (x.size() != cols_) throw InvalidArgument("matrix-vector dimension mismatch");
        RationalVector y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0 && x[j] != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product dimension mismatch");
        RationalMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
        a.require_same_shape(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend RationalMatrix operator*(const Rational& s, RationalMatrix a) {
        for (auto& q : a.data_) q *= s;
        return a;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const RationalMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    void require_same_shape(const RationalMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw InvalidArgument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Side-by-side concatenation [a | b]; row counts must agree.
inline RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw InvalidArgument("hstack row mismatch");
    RationalMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

struct EchelonForm {
    RationalMatrix reduced;           ///< reduced row echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Exact Gauss-Jordan elimination to reduced row echelon form.
inline EchelonForm reduced_row_echelon(RationalMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) {
    // Eliminate along the shorter side.
    if (m.rows() > m.cols()) return reduced_row_echelon(m.transpose()).pivots.size();
    return reduced_row_echelon(m).pivots.size();
}

/// Scale to integer entries with gcd 1 and a positive first nonzero entry.
inline RationalVector normalize_integer(RationalVector v) {
    Integer lcm_den = 1;
    for (const auto& q : v)
        if (q != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational scaled = v[i] * lcm_den;
        ints[i] = scaled.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    if (g == 0) return v;
    const auto lead = std::find_if(ints.begin(), ints.end(), [](const Integer& z) { return z != 0; });
    if (*lead < 0) g = -g;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(ints[i] / g);
    return v;
}

/// Basis of the right nullspace, one normalized integer vector per free
/// column. Empty iff the matrix has full column rank.
inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    const EchelonForm ef = reduced_row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : ef.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, free);
        basis.push_back(normalize_integer(std::move(v)));
    }
    return basis;
}

/// Inverse of a nonsingular square matrix.
inline RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const EchelonForm ef = reduced_row_echelon(hstack(m, RationalMatrix::identity(n)));
    if (ef.pivots.size() < n || (n > 0 && ef.pivots[n - 1] != n - 1))
        throw ConsistencyError("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = ef.reduced(i, n + j);
    return inv;
}

/// Exact bilinear form x^T g y.
inline Rational bilinear(std::span<const Rational> x, const RationalMatrix& g, std::span<const Rational> y) {
    const RationalVector gy = g.apply(y);
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) s += x[i] * gy[i];
    return s;
}

}  // namespace glmy
