#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "curvesplit/errors.hpp"

namespace curvesplit {

// Multiset of line-bundle degrees on a smooth rational curve, stored sorted
// descending. Grothendieck decomposition is unique up to order, so multiset
// equality is the only equality.
struct SplittingType {
    std::vector<long long> degrees;

    SplittingType() = default;
    SplittingType(std::initializer_list<long long> d) : degrees(d) { canonicalize(); }
    explicit SplittingType(std::vector<long long> d) : degrees(std::move(d)) { canonicalize(); }

    void canonicalize() { std::sort(degrees.begin(), degrees.end(), std::greater<>()); }

    long long rank() const { return static_cast<long long>(degrees.size()); }
    long long total_degree() const {
        long long s = 0;
        for (long long d : degrees) s += d;
        return s;
    }
    bool operator==(const SplittingType& o) const { return degrees == o.degrees; }

    std::string str() const {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
        os << "}";
        return os.str();
    }
};

// Multiset of degree pairs on a two-component curve; first coordinate is the
// degree on the first (larger-degree) component. Sorted lexicographically
// descending.
struct BidegreeSplitting {
    std::vector<std::pair<long long, long long>> pairs;

    BidegreeSplitting() = default;
    BidegreeSplitting(std::initializer_list<std::pair<long long, long long>> p) : pairs(p) {
        canonicalize();
    }
    explicit BidegreeSplitting(std::vector<std::pair<long long, long long>> p) : pairs(std::move(p)) {
        canonicalize();
    }

    void canonicalize() { std::sort(pairs.begin(), pairs.end(), std::greater<>()); }

    long long rank() const { return static_cast<long long>(pairs.size()); }
    std::pair<long long, long long> component_totals() const {
        std::pair<long long, long long> t{0, 0};
        for (auto& p : pairs) {
            t.first += p.first;
            t.second += p.second;
        }
        return t;
    }
    SplittingType component(int side) const {
        std::vector<long long> d;
        for (auto& p : pairs) d.push_back(side == 1 ? p.first : p.second);
        return SplittingType(d);
    }
    bool operator==(const BidegreeSplitting& o) const { return pairs == o.pairs; }

    std::string str() const {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < pairs.size(); ++i)
            os << (i ? "," : "") << "(" << pairs[i].first << "," << pairs[i].second << ")";
        os << "}";
        return os.str();
    }
};

// The integers (k, r) attached to a degree d in ambient dimension n by
// (n+1)d - 2 = k(n-1) + (n-1) - r with 0 < r <= n-1.
struct KRData {
    long long n = 0, d = 0, k = 0, r = 0;
};

inline KRData kr_data(long long d, long long n) {
    require(n >= 2 && d >= 1, "kr_data wants n >= 2, d >= 1");
    long long t = (n + 1) * d - 2;
    long long r = (-t) % (n - 1);
    if (r < 0) r += n - 1;
    if (r == 0) r = n - 1;
    KRData out{n, d, (t + r) / (n - 1) - 1, r};
    return out;
}

inline bool is_perfect_pair(long long d, long long n) {
    require(n >= 2, "is_perfect_pair wants n >= 2");
    return (2 * d - 2) % (n - 1) == 0;
}

// Conormal splitting type of a generic degree-d rational curve in P^n.
// Nondegenerate range d >= n and the degenerate range d < n meet at d = n.
inline SplittingType generic_smooth_splitting(long long d, long long n) {
    require(n >= 2 && d >= 1, "generic_smooth_splitting wants n >= 2, d >= 1");
    std::vector<long long> degs;
    if (d >= n) {
        KRData kr = kr_data(d, n);
        degs.insert(degs.end(), static_cast<std::size_t>(kr.r), -kr.k);
        degs.insert(degs.end(), static_cast<std::size_t>(n - 1 - kr.r), -kr.k - 1);
    } else {
        degs.insert(degs.end(), static_cast<std::size_t>(n - d), -d);
        degs.insert(degs.end(), static_cast<std::size_t>(d - 1), -d - 2);
    }
    return SplittingType(std::move(degs));
}

struct Balancedness {
    long long width = 0;
    bool balanced() const { return width == 0; }
    bool almost_balanced() const { return width <= 1; }
};

inline Balancedness balancedness(const SplittingType& t) {
    require(t.rank() >= 1, "balancedness of the rank-0 type");
    return Balancedness{t.degrees.front() - t.degrees.back()};
}

inline long long h0_line(long long e) { return std::max<long long>(0, e + 1); }
inline long long h1_line(long long e) { return std::max<long long>(0, -e - 1); }

// Twist m with h^1(t(m)) = 0 and h^0(t(m)(-1)) = 0; exists exactly for
// almost balanced types.
inline std::optional<long long> ab_twist_certificate(const SplittingType& t) {
    require(t.rank() >= 1, "ab_twist_certificate of the rank-0 type");
    if (!balancedness(t).almost_balanced()) return std::nullopt;
    long long m = -1 - t.degrees.back();
    for (long long e : t.degrees) {
        check_consistent(h1_line(e + m) == 0 && h0_line(e + m - 1) == 0,
                         "AB twist certificate failed its own vanishing check");
    }
    return m;
}

// One length-1 elementary reduction: the chosen summand drops by 1.
inline SplittingType chop_summand(const SplittingType& t, std::size_t index) {
    require(index < t.degrees.size(), "chop_summand index out of range");
    std::vector<long long> d = t.degrees;
    d[index] -= 1;
    return SplittingType(std::move(d));
}

// ---- h^0 profiles and their decoding ----

inline long long h0_profile(const SplittingType& t, long long m) {
    long long h = 0;
    for (long long e : t.degrees) h += h0_line(e + m);
    return h;
}

// Inverts h0_profile over a contiguous twist window. The window must either
// start where the profile vanishes, or start at twist 0 under the promise
// that all degrees are <= 0 (kernel subsheaves of trivial bundles). Every
// decode is re-checked against the full input profile; failures are
// reported, never repaired.
inline SplittingType decode_h0_profile(const std::map<long long, long long>& profile,
                                       long long rank, long long total_degree) {
    require(!profile.empty(), "empty h0 profile");
    long long m0 = profile.begin()->first;
    long long m1 = profile.rbegin()->first;
    check_consistent(static_cast<long long>(profile.size()) == m1 - m0 + 1,
                     "h0 profile window is not contiguous");
    long long anchor = profile.at(m0);
    check_consistent(anchor == 0 || m0 == 0,
                     "h0 profile window must start at 0 or at a vanishing twist");
    std::vector<long long> degs;
    long long prev = anchor;
    degs.insert(degs.end(), static_cast<std::size_t>(anchor), -m0);
    for (long long m = m0 + 1; m <= m1; ++m) {
        long long cur = profile.at(m) - profile.at(m - 1);
        check_consistent(cur >= prev, "h0 profile differences are not monotone");
        degs.insert(degs.end(), static_cast<std::size_t>(cur - prev), -m);
        prev = cur;
    }
    SplittingType t(std::move(degs));
    check_consistent(t.rank() == rank, "decoded rank mismatch: " + t.str());
    check_consistent(t.total_degree() == total_degree, "decoded total degree mismatch: " + t.str());
    for (long long m = m0; m <= m1; ++m)
        check_consistent(h0_profile(t, m) == profile.at(m),
                         "decoded multiset does not reproduce the profile: " + t.str());
    return t;
}

// ---- the predicted-splitting catalog for generic angles ----

// Restriction of the conormal bundle of a generic angle to one component of
// degree c (the other component has degree other; only c matters for the
// shape, the other side fixes that the modification is generic).
inline SplittingType restriction_to_component(long long a, long long b, long long n, int side) {
    require(a >= b && b >= 1 && n >= 3, "restriction_to_component wants a >= b >= 1, n >= 3");
    require(side == 1 || side == 2, "side must be 1 or 2");
    long long c = (side == 1) ? a : b;
    std::vector<long long> degs;
    if (c >= n) {
        KRData kr = kr_data(c, n);
        degs.insert(degs.end(), static_cast<std::size_t>(kr.r - 1), -kr.k);
        degs.insert(degs.end(), static_cast<std::size_t>(n - kr.r), -kr.k - 1);
    } else {
        degs.insert(degs.end(), static_cast<std::size_t>(n - c - 1), -c);
        degs.push_back(-c - 1);
        degs.insert(degs.end(), static_cast<std::size_t>(c - 1), -c - 2);
    }
    return SplittingType(std::move(degs));
}

// Conormal splitting type of a generic rational angle of bidegree (a, b) in
// P^n, first component the larger-degree one. Dispatch: both degrees >= n,
// mixed, or both < n (with the sub-cases a+b >= n and a+b < n; the two-lines
// case is the a = b = 1 instance of the latter).
inline BidegreeSplitting generic_angle_splitting(long long a, long long b, long long n) {
    require(a >= b && b >= 1 && n >= 3, "generic_angle_splitting wants a >= b >= 1, n >= 3");
    std::vector<std::pair<long long, long long>> ps;
    auto add = [&ps](long long count, long long e1, long long e2) {
        require(count >= 0, "negative multiplicity in angle catalog");
        for (long long i = 0; i < count; ++i) ps.emplace_back(e1, e2);
    };
    if (b >= n) {
        KRData ka = kr_data(a, n), kb = kr_data(b, n);
        if (ka.r + kb.r >= n + 1) {
            add(ka.r + kb.r - n - 1, -ka.k, -kb.k);
            add(n - kb.r, -ka.k, -kb.k - 1);
            add(n - ka.r, -ka.k - 1, -kb.k);
        } else {
            add(ka.r - 1, -ka.k, -kb.k - 1);
            add(kb.r - 1, -ka.k - 1, -kb.k);
            add(n + 1 - ka.r - kb.r, -ka.k - 1, -kb.k - 1);
        }
    } else if (a >= n) {
        // Large component first coordinate; the printed statement names the
        // small-degree component first, so the pair orientation is swapped
        // relative to it.
        KRData kr = kr_data(a, n);
        long long k = kr.k, r = kr.r, s = b;
        if (r > s) {
            add(r - s - 1, -k, -s);
            add(1, -k, -s - 1);
            add(n - r, -k - 1, -s);
            add(s - 1, -k, -s - 2);
        } else {
            add(n - s - 1, -k - 1, -s);
            add(1, -k - 1, -s - 1);
            add(r - 1, -k, -s - 2);
            add(s - r, -k - 1, -s - 2);
        }
    } else if (a + b >= n) {
        add(n - a - 1, -a, -b - 2);
        add(n - b - 1, -a - 2, -b);
        add(1, -a - 1, -b - 1);
        add(a + b - n, -a - 2, -b - 2);
    } else {
        add(n - a - b, -a, -b);
        add(b - 1, -a, -b - 2);
        add(a - 1, -a - 2, -b);
        add(1, -a - 1, -b - 1);
    }
    BidegreeSplitting out(std::move(ps));
    check_consistent(out.rank() == n - 1, "angle catalog rank is not n-1");
    return out;
}

// ---- tabulated chain configurations ----

// One row of a multi-component splitting table: per-component degrees of the
// line-bundle summands of the conormal bundle of a chain curve.
using ChainSplitting = std::vector<std::vector<long long>>;

inline ChainSplitting sort_chain(ChainSplitting c) {
    std::sort(c.begin(), c.end(), std::greater<>());
    return c;
}

enum class ChainCase {
    rnc_union_line,        // full rational normal curve plus a unisecant line
    rnc_union_two_lines,   // rational normal curve plus two general unisecants
    rnc_union_degenerate,  // rational normal curve plus a degree-a curve, a < n
    subrnc_union_line,     // degree n-1 curve plus a unisecant line
};

inline ChainSplitting chain_catalog(ChainCase c, long long n, long long a = 0) {
    ChainSplitting rows;
    auto add = [&rows](long long count, std::vector<long long> degs) {
        require(count >= 0, "negative multiplicity in chain catalog");
        for (long long i = 0; i < count; ++i) rows.push_back(degs);
    };
    switch (c) {
        case ChainCase::rnc_union_line:
            require(n >= 3, "chain catalog wants n >= 3");
            add(n - 3, {-n - 2, -1});
            add(1, {-n - 2, -2});
            add(1, {-n - 3, -1});
            break;
        case ChainCase::rnc_union_two_lines:
            require(n >= 3, "chain catalog wants n >= 3");
            if (n == 3) {
                add(1, {-6, -1, -2});
                add(1, {-6, -2, -1});
            } else if (n == 4) {
                add(1, {-6, -2, -2});
                add(2, {-7, -1, -1});
            } else {
                add(n - 5, {-n - 2, -1, -1});
                add(1, {-n - 2, -1, -2});
                add(1, {-n - 2, -2, -1});
                add(2, {-n - 3, -1, -1});
            }
            break;
        case ChainCase::rnc_union_degenerate:
            require(n >= 3 && a >= 1 && a <= n - 1, "chain catalog wants 1 <= a <= n-1");
            if (a <= n - 2) {
                add(n - a - 2, {-n - 2, -a});
                add(1, {-n - 3, -a});
                add(1, {-n - 2, -a - 1});
                add(a - 1, {-n - 2, -a - 2});
            } else {
                add(1, {-n - 3, -n});
                add(n - 2, {-n - 2, -n - 1});
            }
            break;
        case ChainCase::subrnc_union_line:
            require(n >= 3, "chain catalog wants n >= 3");
            add(1, {-n, -2});
            add(n - 2, {-n - 1, -1});
            break;
    }
    check_consistent(static_cast<long long>(rows.size()) == n - 1, "chain catalog rank is not n-1");
    return sort_chain(std::move(rows));
}

}  // namespace curvesplit
