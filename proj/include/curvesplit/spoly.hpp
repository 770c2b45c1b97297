#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "curvesplit/errors.hpp"
#include "curvesplit/matrix.hpp"
#include "curvesplit/rat.hpp"

namespace curvesplit {

// Polynomial in the smoothing parameter s, truncated at s^trunc. Arithmetic
// silently discards powers >= trunc; that is the whole point of the type.
struct SPoly {
    int trunc = 1;
    std::vector<Rat> coeff;  // coeff[k] multiplies s^k; size <= trunc

    SPoly() = default;
    explicit SPoly(int truncation) : trunc(truncation) {
        require(truncation >= 1, "truncation order must be >= 1");
    }
    SPoly(int truncation, const Rat& constant) : SPoly(truncation) {
        if (constant != 0) coeff.assign(1, constant);
    }

    static SPoly monomial(int truncation, int power, const Rat& c) {
        SPoly p(truncation);
        if (power < truncation && c != 0) {
            p.coeff.assign(static_cast<std::size_t>(power) + 1, Rat(0));
            p.coeff[static_cast<std::size_t>(power)] = c;
        }
        return p;
    }

    Rat at(int power) const {
        if (power < 0 || power >= static_cast<int>(coeff.size())) return 0;
        return coeff[static_cast<std::size_t>(power)];
    }

    bool is_zero() const {
        for (const Rat& c : coeff)
            if (c != 0) return false;
        return true;
    }

    void normalize() {
        while (!coeff.empty() && coeff.back() == 0) coeff.pop_back();
    }
};

inline SPoly operator+(const SPoly& a, const SPoly& b) {
    require(a.trunc == b.trunc, "mixed truncation orders");
    SPoly r(a.trunc);
    r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()));
    for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = a.at(static_cast<int>(i)) + b.at(static_cast<int>(i));
    r.normalize();
    return r;
}

inline SPoly operator-(const SPoly& a, const SPoly& b) {
    require(a.trunc == b.trunc, "mixed truncation orders");
    SPoly r(a.trunc);
    r.coeff.resize(std::max(a.coeff.size(), b.coeff.size()));
    for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = a.at(static_cast<int>(i)) - b.at(static_cast<int>(i));
    r.normalize();
    return r;
}

inline SPoly operator*(const SPoly& a, const SPoly& b) {
    require(a.trunc == b.trunc, "mixed truncation orders");
    SPoly r(a.trunc);
    if (a.is_zero() || b.is_zero()) return r;
    std::size_t n = std::min<std::size_t>(a.coeff.size() + b.coeff.size() - 1,
                                          static_cast<std::size_t>(a.trunc));
    r.coeff.assign(n, Rat(0));
    for (std::size_t i = 0; i < a.coeff.size(); ++i) {
        if (a.coeff[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeff.size() && i + j < n; ++j)
            r.coeff[i + j] += a.coeff[i] * b.coeff[j];
    }
    r.normalize();
    return r;
}

struct SPolyMatrix {
    std::size_t rows = 0, cols = 0;
    int trunc = 1;
    std::vector<SPoly> a;

    SPolyMatrix() = default;
    SPolyMatrix(std::size_t r, std::size_t c, int truncation)
        : rows(r), cols(c), trunc(truncation), a(r * c, SPoly(truncation)) {}

    SPoly& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const SPoly& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct DetValuation {
    long long valuation = 0;
    // False when the determinant vanishes up to the truncation order, i.e.
    // the computation is inconclusive at this truncation.
    bool leading_unit_nonzero = false;
};

namespace detail {

using QPoly = std::vector<Rat>;  // untruncated, coeff[k] of s^k

inline void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qpoly_trim(r);
    return r;
}

inline QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qpoly_trim(a);
    return a;
}

// Exact division, used only where Bareiss guarantees divisibility.
inline QPoly qpoly_div_exact(QPoly a, const QPoly& b) {
    qpoly_trim(a);
    if (a.empty()) return {};
    check_consistent(!b.empty() && a.size() >= b.size(), "inexact polynomial division in Bareiss step");
    QPoly q(a.size() - b.size() + 1, Rat(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Rat c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
    }
    qpoly_trim(a);
    check_consistent(a.empty(), "inexact polynomial division in Bareiss step");
    return q;
}

// Bareiss fraction-free determinant over Q[s]. The truncated entries are
// lifted to their polynomial representatives: the result agrees with the
// true determinant modulo s^trunc, which is all the caller may read.
inline QPoly qpoly_det_bareiss(std::vector<std::vector<QPoly>> m) {
    const std::size_t n = m.size();
    if (n == 0) return {Rat(1)};
    int sign = 1;
    QPoly prev = {Rat(1)};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k].empty()) ++p;
        if (p == n) return {};  // determinant identically zero
        if (p != k) {
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                QPoly num = qpoly_sub(qpoly_mul(m[i][j], m[k][k]), qpoly_mul(m[i][k], m[k][j]));
                m[i][j] = qpoly_div_exact(std::move(num), prev);
            }
            m[i][k].clear();
        }
        prev = m[k][k];
    }
    QPoly det = m[n - 1][n - 1];
    if (sign < 0)
        for (Rat& c : det) c = -c;
    return det;
}

}  // namespace detail

// s-adic valuation of det(m), read through the truncation. If every
// coefficient below the truncation order vanishes, reports
// (truncation, false): inconclusive at this order, caller should raise it.
inline DetValuation s_valuation_of_det(const SPolyMatrix& m) {
    require(m.rows == m.cols, "determinant of a non-square matrix");
    std::vector<std::vector<detail::QPoly>> lift(m.rows, std::vector<detail::QPoly>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            detail::QPoly p = m(i, j).coeff;
            detail::qpoly_trim(p);
            lift[i][j] = std::move(p);
        }
    detail::QPoly det = detail::qpoly_det_bareiss(std::move(lift));
    for (std::size_t k = 0; k < det.size() && k < static_cast<std::size_t>(m.trunc); ++k)
        if (det[k] != 0) return DetValuation{static_cast<long long>(k), true};
    return DetValuation{m.trunc, false};
}

// Constant-term matrix (the fibre at s = 0).
inline RatMatrix constant_term_matrix(const SPolyMatrix& m) {
    RatMatrix r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = m(i, j).at(0);
    return r;
}

}  // namespace curvesplit
