#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "curvesplit/errors.hpp"
#include "curvesplit/rat.hpp"

namespace curvesplit {

// Homogeneous binary form in (s, t). coeff[i] multiplies s^(degree-i) t^i,
// so a degree-d form always stores d+1 coefficients; the zero form keeps its
// nominal degree with all-zero coefficients.
struct BinForm {
    long long degree = 0;
    std::vector<Rat> coeff;

    BinForm() : degree(0), coeff(1) {}
    explicit BinForm(long long deg) : degree(deg), coeff(static_cast<std::size_t>(deg) + 1) {
        require(deg >= 0, "BinForm degree must be >= 0");
    }
    BinForm(long long deg, std::vector<Rat> c) : degree(deg), coeff(std::move(c)) {
        require(deg >= 0 && coeff.size() == static_cast<std::size_t>(deg) + 1,
                "BinForm coefficient count must be degree+1");
    }

    bool is_zero() const {
        for (const Rat& c : coeff)
            if (c != 0) return false;
        return true;
    }

    // Monomial s^(degree-i) t^i.
    static BinForm monomial(long long deg, long long i, const Rat& c = 1) {
        BinForm f(deg);
        f.coeff[static_cast<std::size_t>(i)] = c;
        return f;
    }

    Rat eval(const Rat& s, const Rat& t) const {
        Rat acc = 0;
        for (long long i = 0; i <= degree; ++i) {
            Rat term = coeff[static_cast<std::size_t>(i)];
            if (term == 0) continue;
            for (long long k = 0; k < degree - i; ++k) term *= s;
            for (long long k = 0; k < i; ++k) term *= t;
            acc += term;
        }
        return acc;
    }

    bool operator==(const BinForm& o) const { return degree == o.degree && coeff == o.coeff; }
};

inline BinForm operator+(const BinForm& f, const BinForm& g) {
    require(f.degree == g.degree, "binform sum of unequal degrees");
    BinForm h(f.degree);
    for (std::size_t i = 0; i < h.coeff.size(); ++i) h.coeff[i] = f.coeff[i] + g.coeff[i];
    return h;
}

inline BinForm operator*(const Rat& c, const BinForm& f) {
    BinForm h(f.degree);
    for (std::size_t i = 0; i < h.coeff.size(); ++i) h.coeff[i] = c * f.coeff[i];
    return h;
}

inline BinForm operator*(const BinForm& f, const BinForm& g) {
    BinForm h(f.degree + g.degree);
    for (std::size_t i = 0; i < f.coeff.size(); ++i) {
        if (f.coeff[i] == 0) continue;
        for (std::size_t j = 0; j < g.coeff.size(); ++j)
            if (g.coeff[j] != 0) h.coeff[i + j] += f.coeff[i] * g.coeff[j];
    }
    return h;
}

// d/ds. A degree-0 form differentiates to the degree-0 zero form.
inline BinForm partial_s(const BinForm& f) {
    if (f.degree == 0) return BinForm(0);
    BinForm h(f.degree - 1);
    for (long long i = 0; i < f.degree; ++i)
        h.coeff[static_cast<std::size_t>(i)] = Rat(f.degree - i) * f.coeff[static_cast<std::size_t>(i)];
    return h;
}

inline BinForm partial_t(const BinForm& f) {
    if (f.degree == 0) return BinForm(0);
    BinForm h(f.degree - 1);
    for (long long i = 1; i <= f.degree; ++i)
        h.coeff[static_cast<std::size_t>(i) - 1] = Rat(i) * f.coeff[static_cast<std::size_t>(i)];
    return h;
}

namespace detail {

// Dehomogenized view: f = s^a t^b * core, with core(1, x) a univariate
// polynomial (in x = t/s) having nonzero constant and leading coefficient.
struct SplitForm {
    long long s_mult = 0;
    long long t_mult = 0;
    std::vector<Rat> core;  // univariate, core[k] = coeff of x^k
};

inline SplitForm split_form(const BinForm& f) {
    SplitForm out;
    long long lo = -1, hi = -1;
    for (long long i = 0; i <= f.degree; ++i) {
        if (f.coeff[static_cast<std::size_t>(i)] != 0) {
            if (lo < 0) lo = i;
            hi = i;
        }
    }
    require(lo >= 0, "split_form of the zero form");
    out.t_mult = lo;
    out.s_mult = f.degree - hi;
    out.core.assign(static_cast<std::size_t>(hi - lo) + 1, Rat(0));
    for (long long i = lo; i <= hi; ++i) out.core[static_cast<std::size_t>(i - lo)] = f.coeff[static_cast<std::size_t>(i)];
    return out;
}

inline void poly_trim(std::vector<Rat>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Remainder of univariate division.
inline std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    poly_trim(a);
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        Rat q = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        poly_trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

inline std::vector<Rat> poly_gcd(std::vector<Rat> a, std::vector<Rat> b) {
    poly_trim(a);
    poly_trim(b);
    auto is_zero = [](const std::vector<Rat>& p) { return p.size() == 1 && p[0] == 0; };
    while (!is_zero(b)) {
        std::vector<Rat> r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i) a[i] /= a.back();
    if (!is_zero(a)) a.back() = 1;
    return a;
}

}  // namespace detail

// gcd of two binary forms, normalized so the highest s-power coefficient is
// 1. gcd with the zero form is the (normalized) other form.
inline BinForm binform_gcd(const BinForm& f, const BinForm& g) {
    auto normalize = [](const BinForm& h) {
        for (const Rat& c : h.coeff)
            if (c != 0) return (Rat(1) / c) * h;
        return h;
    };
    if (f.is_zero() && g.is_zero()) return BinForm(0);
    if (f.is_zero()) return normalize(g);
    if (g.is_zero()) return normalize(f);
    detail::SplitForm a = detail::split_form(f);
    detail::SplitForm b = detail::split_form(g);
    std::vector<Rat> core = detail::poly_gcd(a.core, b.core);
    long long s_mult = std::min(a.s_mult, b.s_mult);
    long long t_mult = std::min(a.t_mult, b.t_mult);
    long long deg = s_mult + t_mult + static_cast<long long>(core.size()) - 1;
    BinForm h(deg);
    for (std::size_t k = 0; k < core.size(); ++k) h.coeff[static_cast<std::size_t>(t_mult) + k] = core[k];
    return normalize(h);
}

// Exact division; nullopt when g does not divide f.
inline std::optional<BinForm> binform_divide(const BinForm& f, const BinForm& g) {
    require(!g.is_zero(), "division by the zero form");
    if (f.is_zero()) return BinForm(0);
    if (f.degree < g.degree) return std::nullopt;
    detail::SplitForm a = detail::split_form(f);
    detail::SplitForm b = detail::split_form(g);
    if (a.s_mult < b.s_mult || a.t_mult < b.t_mult) return std::nullopt;
    if (a.core.size() < b.core.size()) return std::nullopt;
    std::vector<Rat> q(a.core.size() - b.core.size() + 1, Rat(0));
    std::vector<Rat> rem = a.core;
    for (std::size_t k = q.size(); k-- > 0;) {
        Rat c = rem[k + b.core.size() - 1] / b.core.back();
        q[k] = c;
        if (c != 0)
            for (std::size_t i = 0; i < b.core.size(); ++i) rem[k + i] -= c * b.core[i];
    }
    for (const Rat& c : rem)
        if (c != 0) return std::nullopt;
    long long deg = f.degree - g.degree;
    BinForm h(deg);
    long long t_mult = a.t_mult - b.t_mult;
    for (std::size_t k = 0; k < q.size(); ++k) h.coeff[static_cast<std::size_t>(t_mult) + k] = q[k];
    return h;
}

}  // namespace curvesplit
