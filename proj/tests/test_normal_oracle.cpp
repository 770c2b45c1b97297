#include <catch2/catch_amalgamated.hpp>

#include "curvesplit/oracle.hpp"
#include "curvesplit/prng.hpp"

using namespace curvesplit;

namespace {

// Rational normal curve of degree d embedded by monomials in P^n (zero
// components beyond degree d span nothing extra).
Parametrization monomial_curve(long long n, long long d) {
    Parametrization p;
    p.n = n;
    p.d = d;
    for (long long i = 0; i <= n; ++i)
        p.f.push_back(i <= d ? BinForm::monomial(d, i) : BinForm(d));
    return p;
}

// Degenerate embedding by random combinations of the degree-d monomials.
Parametrization scrambled_degenerate_curve(long long n, long long d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    while (true) {
        Parametrization p;
        p.n = n;
        p.d = d;
        for (long long i = 0; i <= n; ++i) {
            BinForm g(d);
            for (long long c = 0; c <= d; ++c) g.coeff[static_cast<std::size_t>(c)] = rng.range(-5, 5);
            p.f.push_back(std::move(g));
        }
        try {
            p.validate();
            if (is_unramified(p)) return p;
        } catch (const precondition_error&) {
        }
    }
}

}  // namespace

TEST_CASE("jet matrices") {
    Parametrization cubic = monomial_curve(3, 3);
    JetMatrix j = jet_matrix(cubic);
    REQUIRE(j.row_s[0] == Rat(3) * BinForm::monomial(2, 0));
    REQUIRE(j.row_s[1] == Rat(2) * BinForm::monomial(2, 1));
    REQUIRE(j.row_s[2] == BinForm::monomial(2, 2));
    REQUIRE(j.row_s[3].is_zero());
    REQUIRE(j.row_t[0].is_zero());
    REQUIRE(j.row_t[1] == BinForm::monomial(2, 0));
    REQUIRE(j.row_t[2] == Rat(2) * BinForm::monomial(2, 1));
    REQUIRE(j.row_t[3] == Rat(3) * BinForm::monomial(2, 2));
}

TEST_CASE("ramification detection") {
    REQUIRE(is_unramified(monomial_curve(3, 3)));
    Parametrization cusp;
    cusp.n = 3;
    cusp.d = 3;
    cusp.f = {BinForm::monomial(3, 0), BinForm::monomial(3, 2), BinForm::monomial(3, 3), BinForm(3)};
    REQUIRE_FALSE(is_unramified(cusp));
    RandomParametrization rp = random_parametrization(3, 4, 1);
    REQUIRE(is_unramified(rp.p));
}

TEST_CASE("twisted conormal section counts") {
    Parametrization cubic = monomial_curve(3, 3);
    REQUIRE(conormal_h0(cubic, 0) == 0);
    REQUIRE(conormal_h0(cubic, 1) == 0);
    REQUIRE(conormal_h0(cubic, 2) == 2);
    Parametrization line = monomial_curve(3, 1);
    REQUIRE(conormal_h0(line, 0) == 2);
}

TEST_CASE("h0 differences are nondecreasing in the twist") {
    RandomParametrization rp = random_parametrization(3, 4, 5);
    long long prev_diff = -1, prev = 0;
    for (long long m = 0; m <= 6; ++m) {
        long long h = conormal_h0(rp.p, m);
        if (m > 0) {
            REQUIRE(h - prev >= prev_diff);
            prev_diff = h - prev;
        }
        prev = h;
    }
}

TEST_CASE("smooth conormal splitting of rational normal curves") {
    for (long long n = 3; n <= 6; ++n) {
        SplittingType t = smooth_conormal_splitting(monomial_curve(n, n));
        REQUIRE(t == generic_smooth_splitting(n, n));
    }
}

TEST_CASE("smooth conormal splitting of generic and degenerate curves") {
    RandomParametrization quartic = random_parametrization(3, 4, 1);
    REQUIRE(smooth_conormal_splitting(quartic.p) == SplittingType{-7, -7});

    REQUIRE(smooth_conormal_splitting(monomial_curve(3, 2)) == SplittingType{-2, -4});
    for (long long n = 3; n <= 6; ++n)
        for (long long d = 1; d < n; ++d) {
            REQUIRE(smooth_conormal_splitting(monomial_curve(n, d)) == generic_smooth_splitting(d, n));
            REQUIRE(smooth_conormal_splitting(scrambled_degenerate_curve(n, d, 100 + n * 10 + d)) ==
                    generic_smooth_splitting(d, n));
        }
}

TEST_CASE("projective changes of coordinates do not move the splitting") {
    SplitMix64 rng(41);
    RandomParametrization rp = random_parametrization(3, 5, 2);
    SplittingType base = smooth_conormal_splitting(rp.p);
    for (int trial = 0; trial < 2; ++trial) {
        RatMatrix g(4, 4);
        do {
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) g(i, j) = rng.range(-5, 5);
        } while (!inverse(g).has_value());
        Parametrization moved;
        moved.n = rp.p.n;
        moved.d = rp.p.d;
        for (std::size_t i = 0; i < 4; ++i) {
            BinForm acc(rp.p.d);
            for (std::size_t j = 0; j < 4; ++j) acc = acc + g(i, j) * rp.p.f[j];
            moved.f.push_back(std::move(acc));
        }
        REQUIRE(smooth_conormal_splitting(moved) == base);
    }
}

TEST_CASE("node modification drops one summand by one") {
    for (long long n = 3; n <= 5; ++n) {
        Parametrization rnc = monomial_curve(n, n);
        std::vector<Rat> dir(static_cast<std::size_t>(n) + 1);
        dir[0] = 1;
        dir[static_cast<std::size_t>(n)] = 3;  // generic against the node (1 : 2)
        dir[1] = -2;
        SplittingType t = node_modified_splitting(rnc, 1, 2, dir);
        REQUIRE(t == restriction_to_component(n, 1, n, 1));
    }
    // a line: restriction formula again
    Parametrization line = monomial_curve(4, 1);
    std::vector<Rat> dir = {0, 0, 1, Rat(1) / 2, -1};
    REQUIRE(node_modified_splitting(line, 1, 0, dir) == restriction_to_component(1, 1, 4, 1));
    // degenerate component: degree a < n
    Parametrization conic = scrambled_degenerate_curve(4, 2, 7);
    std::vector<Rat> dir2 = {1, 2, -1, 5, 7};
    REQUIRE(node_modified_splitting(conic, 1, 1, dir2) == restriction_to_component(2, 1, 4, 1));
}

TEST_CASE("node modification rejects tangent directions") {
    Parametrization cubic = monomial_curve(3, 3);
    // tangent direction at (1 : 0): row_s evaluates to (3, 0, 0, 0), row_t to
    // (0, 1, 0, 0); anything in their span is rejected
    std::vector<Rat> tangent = {3, 2, 0, 0};
    REQUIRE_THROWS_AS(node_modified_splitting(cubic, 1, 0, tangent), precondition_error);
}

TEST_CASE("node modification is one elementary reduction of the unmodified type") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 3; ++trial) {
        RandomParametrization rp = random_parametrization(3, 3 + trial, 10 + trial);
        SplittingType base = smooth_conormal_splitting(rp.p);
        std::vector<Rat> dir(4);
        SplittingType modified;
        while (true) {
            for (auto& c : dir) c = rng.range(-9, 9);
            try {
                modified = node_modified_splitting(rp.p, 1, rng.range(-5, 5), dir);
                break;
            } catch (const precondition_error&) {
            }
        }
        REQUIRE(modified.total_degree() == base.total_degree() - 1);
        bool is_step = false;
        for (std::size_t i = 0; i < base.degrees.size(); ++i)
            is_step = is_step || chop_summand(base, i) == modified;
        REQUIRE(is_step);
    }
}

TEST_CASE("angle oracle matches the catalog") {
    struct Case {
        long long a, b, n;
    };
    for (Case c : {Case{1, 1, 3}, Case{2, 2, 3}, Case{3, 2, 3}}) {
        RandomAngleModel ram = random_angle_model(c.n, c.a, c.b, 1);
        REQUIRE(angle_conormal_splitting(ram.am) == generic_angle_splitting(c.a, c.b, c.n));
    }
}

TEST_CASE("random generators are deterministic and certified") {
    RandomParametrization a = random_parametrization(3, 4, 1);
    RandomParametrization b = random_parametrization(3, 4, 1);
    REQUIRE(a.resamples == b.resamples);
    for (std::size_t i = 0; i < a.p.f.size(); ++i) REQUIRE(a.p.f[i] == b.p.f[i]);

    RandomAngleModel am1 = random_angle_model(3, 2, 2, 7);
    RandomAngleModel am2 = random_angle_model(3, 2, 2, 7);
    REQUIRE(am1.am.node_values == am2.am.node_values);
    REQUIRE(am1.am.u_coeffs == am2.am.u_coeffs);
    REQUIRE(am1.am.v_coeffs == am2.am.v_coeffs);

    // lines are always immersed
    RandomParametrization line = random_parametrization(2, 1, 99);
    REQUIRE(is_unramified(line.p));
}
