#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "curvesplit/errors.hpp"
#include "curvesplit/rat.hpp"

namespace curvesplit {

// Dense row-major matrix over exact rationals. Degenerate shapes (0 rows
// and/or 0 columns) are legal; they show up as rank-1 conormal corner cases
// and empty summand families.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        require(cols_ == o.rows_, "matrix product shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& x = (*this)(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        require(v.size() == cols_, "matrix apply shape mismatch");
        std::vector<Rat> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    // Minor with one row and one column removed.
    RatMatrix without_row_col(std::size_t row, std::size_t col) const {
        RatMatrix r(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, ri = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, rj = 0; j < cols_; ++j) {
                if (j == col) continue;
                r(ri, rj) = (*this)(i, j);
                ++rj;
            }
            ++ri;
        }
        return r;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

struct RankKernel {
    long long rank = 0;
    std::vector<std::vector<Rat>> kernel_basis;  // annihilated column vectors
};

namespace detail {

// In-place row echelon reduction; returns pivot column indices.
inline std::vector<std::size_t> echelonize(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rat inv = m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) /= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline long long rank_of(RatMatrix m) {
    return static_cast<long long>(detail::echelonize(m).size());
}

// Exact rank + kernel basis by reduced row echelon form. Kernel vectors use
// the usual free-column parametrization, so the basis is deterministic.
inline RankKernel rank_and_kernel(RatMatrix m) {
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots = detail::echelonize(m);
    RankKernel out;
    out.rank = static_cast<long long>(pivots.size());
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

// Unique solution of a square nonsingular system; nullopt if singular.
inline std::optional<std::vector<Rat>> solve_square(const RatMatrix& m, const std::vector<Rat>& b) {
    require(m.rows() == m.cols() && b.size() == m.rows(), "solve_square wants square shapes");
    const std::size_t n = m.rows();
    RatMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n) = b[i];
    }
    std::vector<std::size_t> pivots = detail::echelonize(aug);
    if (pivots.size() != n) return std::nullopt;
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
    require(m.rows() == m.cols(), "inverse wants a square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> pivots = detail::echelonize(aug);
    if (pivots.size() != n || pivots.back() != n - 1) {
        long long r = rank_of(m);
        if (r < static_cast<long long>(n)) return std::nullopt;
    }
    if (pivots.size() != n) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// ---- subspace arithmetic (columns span the subspace) ----

inline RatMatrix columns(const std::vector<std::vector<Rat>>& vecs, std::size_t dim) {
    RatMatrix m(dim, vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j) {
        require(vecs[j].size() == dim, "spanning vector of wrong length");
        for (std::size_t i = 0; i < dim; ++i) m(i, j) = vecs[j][i];
    }
    return m;
}

inline RatMatrix concat_cols(const RatMatrix& a, const RatMatrix& b) {
    require(a.rows() == b.rows(), "concat_cols shape mismatch");
    RatMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

inline long long subspace_dim(const RatMatrix& span) { return rank_of(span); }

inline bool subspace_contains(const RatMatrix& span, const std::vector<Rat>& v) {
    RatMatrix vcol = columns({v}, span.rows());
    return rank_of(concat_cols(span, vcol)) == rank_of(span);
}

inline long long intersection_dim(const RatMatrix& a, const RatMatrix& b) {
    return rank_of(a) + rank_of(b) - rank_of(concat_cols(a, b));
}

}  // namespace curvesplit
