#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "curvesplit/errors.hpp"
#include "curvesplit/matrix.hpp"
#include "curvesplit/splitting.hpp"

namespace curvesplit {

// Vector bundle on a two-component nodal rational curve, as gluing data.
// Both restrictions come in the normal form where summands are ordered by
// descending degree, so Harder-Narasimhan fibres are coordinate subspaces.
// glue maps node-fibre coordinates on the second component to coordinates on
// the first.
struct AngleBundle {
    SplittingType degs1, degs2;
    RatMatrix glue;

    void validate() const {
        require(degs1.rank() == degs2.rank(), "restriction ranks differ");
        require(glue.rows() == glue.cols() && glue.rows() == static_cast<std::size_t>(degs1.rank()),
                "glue size must equal the rank");
        require(inverse(glue).has_value(), "singular glue matrix");
    }
};

// Splits the bundle into line bundles by peeling one summand at a time:
// take the first summand of maximal degree on component 1, locate the
// Harder-Narasimhan level of its node vector on component 2, split off the
// line through it, and pass to complements. In the normal form the
// complements are coordinate subbundles, so one step is: delete row 0 and
// the column of the last nonzero coordinate of glue^{-1} e_0. Any nonzero
// positive-fibre vector works; e_0 keeps the run deterministic and the
// output multiset is choice-independent anyway.
inline BidegreeSplitting split_angle(const AngleBundle& e) {
    e.validate();
    std::vector<long long> d1 = e.degs1.degrees, d2 = e.degs2.degrees;
    RatMatrix glue = e.glue;
    std::vector<std::pair<long long, long long>> out;
    while (d1.size() > 1) {
        const std::size_t r = d1.size();
        std::vector<Rat> e0(r);
        e0[0] = 1;
        auto w = solve_square(glue, e0);
        check_consistent(w.has_value(), "glue became singular during peeling");
        std::size_t i2 = r;
        for (std::size_t j = r; j-- > 0;) {
            if ((*w)[j] != 0) {
                i2 = j;
                break;
            }
        }
        check_consistent(i2 < r, "zero node vector during peeling");
        out.emplace_back(d1[0], d2[i2]);
        glue = glue.without_row_col(0, i2);
        d1.erase(d1.begin());
        d2.erase(d2.begin() + static_cast<std::ptrdiff_t>(i2));
    }
    out.emplace_back(d1[0], d2[0]);
    return BidegreeSplitting(std::move(out));
}

// Almost balanced on an angle: the pair multiset fits one of the two normal
// forms, { (k,l), (k,l-1), (k-1,l) } or { (k+1,l), (k,l+1), (k,l) }.
inline bool is_ab_angle(const BidegreeSplitting& t) {
    require(t.rank() >= 1, "is_ab_angle of the rank-0 type");
    long long k1 = t.pairs.front().first, k2 = t.pairs.front().second;
    for (auto& p : t.pairs) {
        k1 = std::max(k1, p.first);
        k2 = std::max(k2, p.second);
    }
    auto fits = [&t](std::initializer_list<std::pair<long long, long long>> allowed) {
        for (auto& p : t.pairs)
            if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) return false;
        return true;
    };
    for (long long k : {k1, k1 - 1})
        for (long long l : {k2, k2 - 1}) {
            if (fits({{k, l}, {k, l - 1}, {k - 1, l}})) return true;
            if (fits({{k + 1, l}, {k, l + 1}, {k, l}})) return true;
        }
    return false;
}

// h^0 of the line bundle of bidegree (e1, e2) on an angle: sections are
// pairs of forms agreeing at the node.
inline long long angle_h0_line(long long e1, long long e2) {
    if (e1 >= 0 && e2 >= 0) return e1 + e2 + 1;
    if (e1 >= 0) return e1;
    if (e2 >= 0) return e2;
    return 0;
}

inline long long angle_chi_line(long long e1, long long e2) { return e1 + e2 + 1; }

inline long long angle_h1_line(long long e1, long long e2) {
    return angle_h0_line(e1, e2) - angle_chi_line(e1, e2);
}

inline long long angle_h0(const BidegreeSplitting& t, std::pair<long long, long long> twist) {
    long long h = 0;
    for (auto& p : t.pairs) h += angle_h0_line(p.first + twist.first, p.second + twist.second);
    return h;
}

inline long long angle_h1(const BidegreeSplitting& t, std::pair<long long, long long> twist) {
    long long h = 0;
    for (auto& p : t.pairs) h += angle_h1_line(p.first + twist.first, p.second + twist.second);
    return h;
}

// Cohomology of the glued bundle itself, independent of any splitting:
// h^0(E(i,j)) counts pairs of section tuples matching at the node, which is
// a kernel computation against the two evaluation images.
inline long long bundle_h0(const AngleBundle& e, std::pair<long long, long long> twist) {
    const std::size_t r = static_cast<std::size_t>(e.degs1.rank());
    long long h = 0;
    std::vector<std::vector<Rat>> im1, im2;
    for (std::size_t k = 0; k < r; ++k) {
        h += h0_line(e.degs1.degrees[k] + twist.first);
        h += h0_line(e.degs2.degrees[k] + twist.second);
        if (e.degs1.degrees[k] + twist.first >= 0) {
            std::vector<Rat> v(r);
            v[k] = 1;
            im1.push_back(std::move(v));
        }
        if (e.degs2.degrees[k] + twist.second >= 0) {
            std::vector<Rat> v(r);
            for (std::size_t i = 0; i < r; ++i) v[i] = e.glue(i, k);
            im2.push_back(std::move(v));
        }
    }
    std::vector<std::vector<Rat>> all = im1;
    all.insert(all.end(), im2.begin(), im2.end());
    h -= rank_of(columns(all, r));
    return h;
}

inline long long bundle_chi(const AngleBundle& e, std::pair<long long, long long> twist) {
    long long chi = 0;
    for (long long i = 0; i < e.degs1.rank(); ++i)
        chi += e.degs1.degrees[static_cast<std::size_t>(i)] + twist.first +
               e.degs2.degrees[static_cast<std::size_t>(i)] + twist.second + 1;
    return chi;
}

inline long long bundle_h1(const AngleBundle& e, std::pair<long long, long long> twist) {
    return bundle_h0(e, twist) - bundle_chi(e, twist);
}

struct AngleABReport {
    bool via_splitting = false;
    bool via_interface = false;
    bool via_cohomology = false;
    std::optional<std::pair<long long, long long>> twist_certificate;
    bool value() const { return via_splitting; }
};

// The three equivalent characterizations of almost balancedness, computed
// along independent routes and asserted equal.
inline AngleABReport ab_characterizations(const AngleBundle& e) {
    e.validate();
    AngleABReport rep;
    rep.via_splitting = is_ab_angle(split_angle(e));

    const std::size_t r = static_cast<std::size_t>(e.degs1.rank());
    bool restrictions_ab = balancedness(e.degs1).almost_balanced() &&
                           balancedness(e.degs2).almost_balanced();
    if (restrictions_ab) {
        std::vector<std::vector<Rat>> pos1, pos2;
        for (std::size_t k = 0; k < r; ++k) {
            if (e.degs1.degrees[k] == e.degs1.degrees[0]) {
                std::vector<Rat> v(r);
                v[k] = 1;
                pos1.push_back(std::move(v));
            }
            if (e.degs2.degrees[k] == e.degs2.degrees[0]) {
                std::vector<Rat> v(r);
                for (std::size_t i = 0; i < r; ++i) v[i] = e.glue(i, k);
                pos2.push_back(std::move(v));
            }
        }
        RatMatrix m1 = columns(pos1, r), m2 = columns(pos2, r);
        long long want = std::max<long long>(
            0, static_cast<long long>(pos1.size()) + static_cast<long long>(pos2.size()) -
                   static_cast<long long>(r));
        rep.via_interface = intersection_dim(m1, m2) == want;
    }

    long long lo1 = -e.degs1.degrees.front() - 1, hi1 = -e.degs1.degrees.back() + 1;
    long long lo2 = -e.degs2.degrees.front() - 1, hi2 = -e.degs2.degrees.back() + 1;
    for (long long i = lo1; i <= hi1 && !rep.via_cohomology; ++i)
        for (long long j = lo2; j <= hi2 && !rep.via_cohomology; ++j) {
            bool direct = bundle_h1(e, {i, j}) == 0 && bundle_h0(e, {i - 1, j}) == 0 &&
                          bundle_h0(e, {i, j - 1}) == 0;
            bool dual = bundle_h0(e, {i, j}) == 0 && bundle_h1(e, {i + 1, j}) == 0 &&
                        bundle_h1(e, {i, j + 1}) == 0;
            if (direct || dual) {
                rep.via_cohomology = true;
                rep.twist_certificate = std::make_pair(i, j);
            }
        }

    check_consistent(rep.via_splitting == rep.via_interface &&
                         rep.via_splitting == rep.via_cohomology,
                     "the three AB characterizations disagree");
    return rep;
}

// ---- node-fibre flags and relative general position ----

// Two increasing flags in the node fibre together with the singular element.
struct FlagAtNode {
    long long dim = 0;
    std::vector<Rat> sigma;
    std::vector<std::vector<std::vector<Rat>>> flag_f;  // increasing chain, spans
    std::vector<std::vector<std::vector<Rat>>> flag_g;

    void validate() const {
        require(dim >= 1, "FlagAtNode wants dim >= 1");
        require(sigma.size() == static_cast<std::size_t>(dim), "sigma has wrong length");
        bool nonzero = false;
        for (const Rat& c : sigma) nonzero = nonzero || c != 0;
        require(nonzero, "sigma must be nonzero");
        for (auto* chain : {&flag_f, &flag_g}) {
            long long prev = 0;
            for (auto& span : *chain) {
                long long d = subspace_dim(columns(span, static_cast<std::size_t>(dim)));
                require(d > prev, "flag chain is not strictly increasing");
                prev = d;
            }
        }
    }
};

// Relative general position with respect to the singular element: away from
// sigma the pair must meet in expected dimension, through sigma the same
// must hold in the quotient by sigma.
inline bool relative_general_position(const FlagAtNode& f) {
    f.validate();
    const std::size_t m = static_cast<std::size_t>(f.dim);
    for (auto& fs : f.flag_f)
        for (auto& gs : f.flag_g) {
            RatMatrix F = columns(fs, m), G = columns(gs, m);
            long long df = subspace_dim(F), dg = subspace_dim(G);
            bool sigma_in_f = subspace_contains(F, f.sigma);
            bool sigma_in_g = subspace_contains(G, f.sigma);
            if (sigma_in_f && sigma_in_g) {
                long long inter_bar = intersection_dim(F, G) - 1;
                long long want = std::max<long long>(0, (df - 1) + (dg - 1) - (f.dim - 1));
                if (inter_bar != want) return false;
            } else {
                long long want = std::max<long long>(0, df + dg - f.dim);
                if (intersection_dim(F, G) != want) return false;
            }
        }
    return true;
}

// Good interface: relative general position of the Harder-Narasimhan flags
// of the two restrictions at the node. The flags are supplied; only their
// level dimensions are cross-checked against the restriction types.
inline bool good_interface(const SplittingType& restriction1, const SplittingType& restriction2,
                           const FlagAtNode& node_data) {
    auto hn_dims = [](const SplittingType& t) {
        std::vector<long long> dims;
        long long count = 0;
        for (std::size_t i = 0; i < t.degrees.size(); ++i) {
            ++count;
            if (i + 1 == t.degrees.size() || t.degrees[i + 1] != t.degrees[i]) dims.push_back(count);
        }
        return dims;
    };
    std::vector<long long> want_f = hn_dims(restriction1), want_g = hn_dims(restriction2);
    require(node_data.flag_f.size() == want_f.size() && node_data.flag_g.size() == want_g.size(),
            "flag chain lengths do not match the restriction types");
    node_data.validate();
    for (std::size_t i = 0; i < want_f.size(); ++i)
        require(subspace_dim(columns(node_data.flag_f[i], static_cast<std::size_t>(node_data.dim))) ==
                    want_f[i],
                "flag dimensions do not match the first restriction");
    for (std::size_t i = 0; i < want_g.size(); ++i)
        require(subspace_dim(columns(node_data.flag_g[i], static_cast<std::size_t>(node_data.dim))) ==
                    want_g[i],
                "flag dimensions do not match the second restriction");
    return relative_general_position(node_data);
}

}  // namespace curvesplit
