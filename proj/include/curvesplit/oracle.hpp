#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "curvesplit/angle_bundle.hpp"
#include "curvesplit/binform.hpp"
#include "curvesplit/errors.hpp"
#include "curvesplit/matrix.hpp"
#include "curvesplit/prng.hpp"
#include "curvesplit/splitting.hpp"

namespace curvesplit {

// Explicit degree-d rational curve in P^n: an (n+1)-tuple of degree-d binary
// forms. The curve must be honest: no common factor (no base points) and
// nondegenerate in its span.
struct Parametrization {
    long long n = 0;
    long long d = 0;
    std::vector<BinForm> f;  // n+1 forms of degree d

    void validate() const {
        require(n >= 2 && d >= 1, "parametrization wants n >= 2, d >= 1");
        require(f.size() == static_cast<std::size_t>(n) + 1, "parametrization wants n+1 forms");
        bool all_zero = true;
        for (const BinForm& g : f) {
            require(g.degree == d, "component of wrong degree");
            all_zero = all_zero && g.is_zero();
        }
        require(!all_zero, "zero parametrization");
        RatMatrix span(static_cast<std::size_t>(d) + 1, f.size());
        for (std::size_t j = 0; j < f.size(); ++j)
            for (long long i = 0; i <= d; ++i) span(static_cast<std::size_t>(i), j) = f[j].coeff[static_cast<std::size_t>(i)];
        require(rank_of(span) == std::min(n + 1, d + 1),
                "curve is degenerate in its span");
        BinForm g = f[0];
        for (std::size_t j = 1; j < f.size(); ++j) g = binform_gcd(g, f[j]);
        require(g.degree == 0, "components have a common factor");
    }
};

struct JetMatrix {
    std::vector<BinForm> row_s;  // d/ds of each component
    std::vector<BinForm> row_t;
};

inline JetMatrix jet_matrix(const Parametrization& p) {
    JetMatrix j;
    for (const BinForm& g : p.f) {
        j.row_s.push_back(partial_s(g));
        j.row_t.push_back(partial_t(g));
    }
    return j;
}

// First-order non-ramification: the 2x2 minors of the jet matrix have
// constant gcd, i.e. the jet map has full rank at every point.
inline bool is_unramified(const Parametrization& p) {
    bool all_zero = true;
    for (const BinForm& g : p.f) all_zero = all_zero && g.is_zero();
    require(!all_zero, "zero parametrization");
    JetMatrix j = jet_matrix(p);
    BinForm g(0);  // zero form; gcd accumulates
    for (std::size_t i = 0; i < p.f.size(); ++i)
        for (std::size_t k = i + 1; k < p.f.size(); ++k) {
            BinForm minor = j.row_s[i] * j.row_t[k] + Rat(-1) * (j.row_s[k] * j.row_t[i]);
            if (minor.is_zero()) continue;
            g = binform_gcd(g, minor);
            if (g.degree == 0 && !g.is_zero()) return true;
        }
    return g.degree == 0 && !g.is_zero();
}

namespace detail {

// Coefficient matrix of { (g_0,...,g_n) of degree m : sum g_i row = 0 for
// both jet rows }, optionally with one node-evaluation row appended.
struct SyzygySystem {
    RatMatrix mat;
    std::size_t cols = 0;
};

inline SyzygySystem conormal_system(const Parametrization& p, long long m,
                                    const std::optional<std::vector<Rat>>& node_row_coeffs,
                                    const Rat& s0 = 0, const Rat& t0 = 0) {
    JetMatrix jet = jet_matrix(p);
    const std::size_t comps = p.f.size();
    const std::size_t per = static_cast<std::size_t>(m) + 1;
    const std::size_t cols = comps * per;
    const std::size_t prod_len = static_cast<std::size_t>(p.d + m);  // degree d-1+m
    std::size_t rows = 2 * prod_len + (node_row_coeffs ? 1 : 0);
    RatMatrix a(rows, cols);
    for (std::size_t i = 0; i < comps; ++i) {
        for (std::size_t l = 0; l < per; ++l) {
            const std::size_t col = i * per + l;
            for (long long c = 0; c < p.d; ++c) {
                // coefficient of t-power (l + c) in g_{i,l} * row
                a(static_cast<std::size_t>(c) + l, col) = jet.row_s[i].coeff[static_cast<std::size_t>(c)];
                a(prod_len + static_cast<std::size_t>(c) + l, col) = jet.row_t[i].coeff[static_cast<std::size_t>(c)];
            }
        }
    }
    if (node_row_coeffs) {
        // sum_i dir_i g_i(s0, t0) = 0; monomial s^(m-l) t^l evaluates first
        std::vector<Rat> mono(per);
        for (std::size_t l = 0; l < per; ++l) {
            Rat v = 1;
            for (long long k = 0; k < m - static_cast<long long>(l); ++k) v *= s0;
            for (std::size_t k = 0; k < l; ++k) v *= t0;
            mono[l] = v;
        }
        for (std::size_t i = 0; i < comps; ++i)
            for (std::size_t l = 0; l < per; ++l)
                a(rows - 1, i * per + l) = (*node_row_coeffs)[i] * mono[l];
    }
    return SyzygySystem{std::move(a), cols};
}

}  // namespace detail

// h^0 of the twisted kernel bundle: the dimension of degree-m syzygies of
// the jet matrix.
inline long long conormal_h0(const Parametrization& p, long long m) {
    require(m >= 0, "conormal_h0 wants twist >= 0");
    require(is_unramified(p), "ramified parametrization");
    detail::SyzygySystem sys = detail::conormal_system(p, m, std::nullopt);
    return static_cast<long long>(sys.cols) - rank_of(sys.mat);
}

// Conormal splitting type, untwisted. Works with the kernel bundle (degrees
// in [2-2d, 0]) and shifts back by the hyperplane degree at the end.
inline SplittingType smooth_conormal_splitting(const Parametrization& p) {
    p.validate();
    require(is_unramified(p), "ramified parametrization");
    std::map<long long, long long> profile;
    for (long long m = 0; m <= 2 * p.d - 2; ++m) profile[m] = conormal_h0(p, m);
    SplittingType tw = decode_h0_profile(profile, p.n - 1, 2 - 2 * p.d);
    std::vector<long long> degs;
    for (long long e : tw.degrees) degs.push_back(e - p.d);
    return SplittingType(std::move(degs));
}

// Splitting type after the length-1 elementary reduction at a point of the
// curve, cut out by a direction transverse to the curve there.
inline SplittingType node_modified_splitting(const Parametrization& p, const Rat& s0, const Rat& t0,
                                             const std::vector<Rat>& direction) {
    p.validate();
    require(is_unramified(p), "ramified parametrization");
    require(direction.size() == p.f.size(), "direction of wrong length");
    require(!(s0 == 0 && t0 == 0), "node parameter must be a point of P^1");
    JetMatrix jet = jet_matrix(p);
    std::vector<std::vector<Rat>> tangent_span;
    for (auto* row : {&jet.row_s, &jet.row_t}) {
        std::vector<Rat> v;
        for (const BinForm& g : *row) v.push_back(g.eval(s0, t0));
        tangent_span.push_back(std::move(v));
    }
    require(!subspace_contains(columns(tangent_span, p.f.size()), direction),
            "direction tangent to the curve at the node parameter");
    std::map<long long, long long> profile;
    for (long long m = 0; m <= 2 * p.d - 1; ++m) {
        detail::SyzygySystem sys = detail::conormal_system(p, m, direction, s0, t0);
        profile[m] = static_cast<long long>(sys.cols) - rank_of(sys.mat);
    }
    SplittingType tw = decode_h0_profile(profile, p.n - 1, 1 - 2 * p.d);
    std::vector<long long> degs;
    for (long long e : tw.degrees) degs.push_back(e - p.d);
    return SplittingType(std::move(degs));
}

// ---- rational angles via the nodal degeneration ----

// Linear system of bidegree (a, b) on the two-component nodal curve: n+1
// section pairs, each a degree-a form in u and a degree-b form in v sharing
// the node value. Affine coordinates u, v on the two components, node at
// u = v = 0.
struct AngleModel {
    long long n = 0;
    long long a = 0, b = 0;                    // a >= b >= 1
    std::vector<Rat> node_values;              // n+1
    std::vector<std::vector<Rat>> u_coeffs;    // (n+1) x a, powers u^1..u^a
    std::vector<std::vector<Rat>> v_coeffs;    // (n+1) x b

    Parametrization component(int side) const {
        Parametrization p;
        p.n = n;
        p.d = (side == 1) ? a : b;
        const auto& cs = (side == 1) ? u_coeffs : v_coeffs;
        for (std::size_t k = 0; k < node_values.size(); ++k) {
            BinForm g(p.d);
            g.coeff[0] = node_values[k];
            for (long long t = 1; t <= p.d; ++t) g.coeff[static_cast<std::size_t>(t)] = cs[k][static_cast<std::size_t>(t) - 1];
            p.f.push_back(std::move(g));
        }
        return p;
    }

    void validate() const {
        require(n >= 3 && a >= b && b >= 1, "angle model wants n >= 3, a >= b >= 1");
        const std::size_t m = static_cast<std::size_t>(n) + 1;
        require(node_values.size() == m && u_coeffs.size() == m && v_coeffs.size() == m,
                "angle model needs n+1 section pairs");
        // The pairs must span as much of the section space as n+1 elements
        // can; for a + b < n the angle is degenerate in P^n and relations
        // among the pairs are forced (they produce the flat summands).
        RatMatrix stacked(static_cast<std::size_t>(a + b) + 1, m);
        for (std::size_t k = 0; k < m; ++k) {
            stacked(0, k) = node_values[k];
            for (long long t = 1; t <= a; ++t) stacked(static_cast<std::size_t>(t), k) = u_coeffs[k][static_cast<std::size_t>(t) - 1];
            for (long long t = 1; t <= b; ++t)
                stacked(static_cast<std::size_t>(a + t), k) = v_coeffs[k][static_cast<std::size_t>(t) - 1];
        }
        require(rank_of(stacked) == std::min(n + 1, a + b + 1), "section pairs span too little");
        Parametrization cu = component(1), cv = component(2);
        cu.validate();
        cv.validate();
        require(is_unramified(cu), "first component is ramified");
        require(is_unramified(cv), "second component is ramified");
        std::vector<std::vector<Rat>> node_span;
        node_span.push_back(node_values);
        std::vector<Rat> tu(m), tv(m);
        for (std::size_t k = 0; k < m; ++k) {
            tu[k] = u_coeffs[k][0];
            tv[k] = v_coeffs[k][0];
        }
        node_span.push_back(std::move(tu));
        node_span.push_back(std::move(tv));
        require(rank_of(columns(node_span, m)) == 3, "branches are not transverse at the node");
    }
};

using AngleProfile = std::map<std::pair<long long, long long>, long long>;

namespace detail {

// Coordinate change making the node and branch tangents standard: node
// value to e0, u-tangent to e1, v-tangent to e2. The twisted section counts
// are invariant under projective changes, and the normal form makes the
// singular-direction bookkeeping at the node explicit.
inline AngleModel normalized_model(const AngleModel& am) {
    const std::size_t m = am.node_values.size();
    std::vector<std::vector<Rat>> frame;
    frame.push_back(am.node_values);
    std::vector<Rat> tu(m), tv(m);
    for (std::size_t k = 0; k < m; ++k) {
        tu[k] = am.u_coeffs[k][0];
        tv[k] = am.v_coeffs[k][0];
    }
    frame.push_back(std::move(tu));
    frame.push_back(std::move(tv));
    for (std::size_t k = 0; k < m && frame.size() < m; ++k) {
        std::vector<Rat> e(m);
        e[k] = 1;
        frame.push_back(std::move(e));
        if (rank_of(columns(frame, m)) < static_cast<long long>(frame.size())) frame.pop_back();
    }
    auto t = inverse(columns(frame, m));
    check_consistent(t.has_value(), "node frame is singular");
    AngleModel out = am;
    auto apply = [&](std::vector<Rat> col) { return t->apply(col); };
    out.node_values = apply(am.node_values);
    for (long long p = 0; p < am.a; ++p) {
        std::vector<Rat> col(m);
        for (std::size_t k = 0; k < m; ++k) col[k] = am.u_coeffs[k][static_cast<std::size_t>(p)];
        col = apply(col);
        for (std::size_t k = 0; k < m; ++k) out.u_coeffs[k][static_cast<std::size_t>(p)] = col[k];
    }
    for (long long p = 0; p < am.b; ++p) {
        std::vector<Rat> col(m);
        for (std::size_t k = 0; k < m; ++k) col[k] = am.v_coeffs[k][static_cast<std::size_t>(p)];
        col = apply(col);
        for (std::size_t k = 0; k < m; ++k) out.v_coeffs[k][static_cast<std::size_t>(p)] = col[k];
    }
    return out;
}

// h^0 of the twisted conormal sheaf on the nodal curve, computed as glued
// component data: a degree-i syzygy vector on each component, with the node
// values matched coefficientwise and the singular-direction components
// matched through the first-derivative rule (in the normal form, the
// u-derivative along the v-tangent coordinate equals the v-derivative along
// the u-tangent coordinate). Coefficient matching alone would glue only
// modulo the singular element and overcount by the length-1 node excess.
inline long long angle_kernel_dim(const AngleModel& am, long long i, long long j) {
    const std::size_t m = am.node_values.size();
    const std::size_t per_u = static_cast<std::size_t>(i) + 1;
    const std::size_t per_v = static_cast<std::size_t>(j) + 1;
    const std::size_t cols_u = m * per_u, cols_v = m * per_v;
    Parametrization cu = am.component(1), cv = am.component(2);
    SyzygySystem su = conormal_system(cu, i, std::nullopt);
    SyzygySystem sv = conormal_system(cv, j, std::nullopt);
    const std::size_t rows = su.mat.rows() + sv.mat.rows() + m + 1;
    RatMatrix mat(rows, cols_u + cols_v);
    for (std::size_t r = 0; r < su.mat.rows(); ++r)
        for (std::size_t c = 0; c < cols_u; ++c) mat(r, c) = su.mat(r, c);
    for (std::size_t r = 0; r < sv.mat.rows(); ++r)
        for (std::size_t c = 0; c < cols_v; ++c) mat(su.mat.rows() + r, cols_u + c) = sv.mat(r, c);
    const std::size_t match0 = su.mat.rows() + sv.mat.rows();
    for (std::size_t k = 0; k < m; ++k) {
        mat(match0 + k, k * per_u) = 1;
        mat(match0 + k, cols_u + k * per_v) = -1;
    }
    // singular-direction matching; a degree-0 side contributes zero
    if (i >= 1) mat(match0 + m, 2 * per_u + 1) = 1;
    if (j >= 1) mat(match0 + m, cols_u + 1 * per_v + 1) = -1;
    return static_cast<long long>(cols_u + cols_v) - rank_of(mat);
}

}  // namespace detail

inline AngleProfile angle_profile(const AngleModel& am, long long window) {
    am.validate();
    AngleModel nm = detail::normalized_model(am);
    AngleProfile out;
    for (long long i = 0; i <= window; ++i)
        for (long long j = 0; j <= window; ++j) out[{i, j}] = detail::angle_kernel_dim(nm, i, j);
    return out;
}

// Decodes the bidegree splitting from the twisted h^0 profile by candidate
// enumeration; exactly one multiset may match, anything else is reported
// with the raw profile.
inline BidegreeSplitting angle_conormal_splitting(const AngleModel& am, long long window = 4) {
    AngleProfile profile = angle_profile(am, window);
    const long long rank = am.n - 1;
    const long long t1 = 1 - 2 * am.a, t2 = 1 - 2 * am.b;
    std::vector<std::pair<long long, long long>> values;
    for (long long e1 = 0; e1 >= -window; --e1)
        for (long long e2 = 0; e2 >= -window; --e2) values.emplace_back(e1, e2);
    std::vector<BidegreeSplitting> matches;
    std::vector<std::pair<long long, long long>> cur;
    std::function<void(std::size_t, long long, long long)> rec =
        [&](std::size_t from, long long sum1, long long sum2) {
            if (static_cast<long long>(cur.size()) == rank) {
                if (sum1 != t1 || sum2 != t2) return;
                BidegreeSplitting cand(cur);
                for (auto& [tw, h] : profile)
                    if (angle_h0(cand, tw) != h) return;
                matches.push_back(cand);
                return;
            }
            for (std::size_t v = from; v < values.size(); ++v) {
                auto [e1, e2] = values[v];
                // remaining coordinates are <= 0, so sums only decrease
                if (sum1 + e1 < t1 || sum2 + e2 < t2) continue;
                cur.push_back(values[v]);
                rec(v, sum1 + e1, sum2 + e2);
                cur.pop_back();
            }
        };
    rec(0, 0, 0);
    if (matches.size() != 1) {
        std::string dump = "angle profile decode found " + std::to_string(matches.size()) +
                           " candidate multisets; profile:";
        for (auto& [tw, h] : profile)
            dump += " h(" + std::to_string(tw.first) + "," + std::to_string(tw.second) +
                    ")=" + std::to_string(h);
        throw inconsistency_error(dump);
    }
    std::vector<std::pair<long long, long long>> untw;
    for (auto& p : matches[0].pairs) untw.emplace_back(p.first - am.a, p.second - am.b);
    return BidegreeSplitting(std::move(untw));
}

// ---- deterministic random instances ----

struct RandomParametrization {
    Parametrization p;
    int resamples = 0;
};

inline RandomParametrization random_parametrization(long long n, long long d, std::uint64_t seed) {
    require(n >= 2 && d >= 1, "random_parametrization wants n >= 2, d >= 1");
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(n * 1009 + d)));
    for (int attempt = 0; attempt < 64; ++attempt) {
        Parametrization p;
        p.n = n;
        p.d = d;
        for (long long i = 0; i <= n; ++i) {
            BinForm g(d);
            for (long long c = 0; c <= d; ++c) g.coeff[static_cast<std::size_t>(c)] = rng.range(-9, 9);
            p.f.push_back(std::move(g));
        }
        try {
            p.validate();
            if (is_unramified(p)) return RandomParametrization{std::move(p), attempt};
        } catch (const precondition_error&) {
        }
    }
    throw error("random_parametrization exhausted its resample budget; generator bug");
}

struct RandomAngleModel {
    AngleModel am;
    int resamples = 0;
};

inline RandomAngleModel random_angle_model(long long n, long long a, long long b, std::uint64_t seed) {
    require(n >= 3 && a >= b && b >= 1, "random_angle_model wants n >= 3, a >= b >= 1");
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(n * 100003 + a * 101 + b)));
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    for (int attempt = 0; attempt < 64; ++attempt) {
        AngleModel am;
        am.n = n;
        am.a = a;
        am.b = b;
        am.node_values.resize(m);
        am.u_coeffs.assign(m, std::vector<Rat>(static_cast<std::size_t>(a)));
        am.v_coeffs.assign(m, std::vector<Rat>(static_cast<std::size_t>(b)));
        for (std::size_t k = 0; k < m; ++k) {
            am.node_values[k] = rng.range(-9, 9);
            for (auto& c : am.u_coeffs[k]) c = rng.range(-9, 9);
            for (auto& c : am.v_coeffs[k]) c = rng.range(-9, 9);
        }
        try {
            am.validate();
            return RandomAngleModel{std::move(am), attempt};
        } catch (const precondition_error&) {
        }
    }
    throw error("random_angle_model exhausted its resample budget; generator bug");
}

}  // namespace curvesplit
