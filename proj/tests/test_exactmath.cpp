#include <catch2/catch_amalgamated.hpp>

#include "curvesplit/binform.hpp"
#include "curvesplit/matrix.hpp"
#include "curvesplit/prng.hpp"
#include "curvesplit/spoly.hpp"

using namespace curvesplit;

namespace {

RatMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

BinForm form(long long deg, const std::vector<long long>& coeffs) {
    BinForm f(deg);
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.coeff[i] = coeffs[i];
    return f;
}

}  // namespace

TEST_CASE("rank and kernel on pinned examples") {
    REQUIRE(rank_and_kernel(RatMatrix::identity(2)).rank == 2);
    REQUIRE(rank_and_kernel(RatMatrix::identity(2)).kernel_basis.empty());

    RankKernel rk = rank_and_kernel(from_rows({{1, 1}}));
    REQUIRE(rk.rank == 1);
    REQUIRE(rk.kernel_basis.size() == 1);
    REQUIRE(rk.kernel_basis[0][0] + rk.kernel_basis[0][1] == 0);
    REQUIRE(rk.kernel_basis[0][0] != 0);

    // conic through 5 seeded rational points: evaluation matrix of the six
    // monomials x^2, xy, y^2, x, y, 1
    SplitMix64 rng(42);
    RatMatrix ev(5, 6);
    for (std::size_t i = 0; i < 5; ++i) {
        Rat x = rng.range(-20, 20), y = Rat(rng.range(-20, 20)) / 3;
        ev(i, 0) = x * x;
        ev(i, 1) = x * y;
        ev(i, 2) = y * y;
        ev(i, 3) = x;
        ev(i, 4) = y;
        ev(i, 5) = 1;
    }
    RankKernel conic = rank_and_kernel(ev);
    REQUIRE(conic.rank == 5);
    REQUIRE(conic.kernel_basis.size() == 1);
}

TEST_CASE("degenerate shapes are legal") {
    RatMatrix zero_rows(0, 3);
    RankKernel rk = rank_and_kernel(zero_rows);
    REQUIRE(rk.rank == 0);
    REQUIRE(rk.kernel_basis.size() == 3);
    RatMatrix zero_cols(3, 0);
    rk = rank_and_kernel(zero_cols);
    REQUIRE(rk.rank == 0);
    REQUIRE(rk.kernel_basis.empty());
}

TEST_CASE("rank equals rank of transpose and kernel annihilates, randomized") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = static_cast<std::size_t>(rng.range(0, 5));
        std::size_t c = static_cast<std::size_t>(rng.range(0, 5));
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.range(-3, 3);
        RankKernel rk = rank_and_kernel(m);
        REQUIRE(rk.rank == rank_of(m.transposed()));
        REQUIRE(rk.rank + static_cast<long long>(rk.kernel_basis.size()) == static_cast<long long>(c));
        for (auto& v : rk.kernel_basis) {
            std::vector<Rat> image = m.apply(v);
            for (auto& x : image) REQUIRE(x == 0);
        }
    }
}

TEST_CASE("binary form calculus on pinned examples") {
    BinForm s3 = BinForm::monomial(3, 0);  // s^3
    BinForm ds = partial_s(s3);
    REQUIRE(ds == form(2, {3, 0, 0}));  // 3 s^2

    BinForm s2t = BinForm::monomial(3, 1);  // s^2 t
    REQUIRE(partial_s(s2t) == form(2, {0, 2, 0}));
    REQUIRE(partial_t(s2t) == form(2, {1, 0, 0}));

    BinForm st2 = BinForm::monomial(3, 2);
    REQUIRE(binform_gcd(s2t, st2) == form(2, {0, 1, 0}));  // s t

    BinForm prod = s2t * st2;  // s^3 t^3
    REQUIRE(prod.degree == 6);
    REQUIRE(prod == BinForm::monomial(6, 3));
}

TEST_CASE("gcd divides both exactly, randomized") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 80; ++trial) {
        BinForm f(rng.range(0, 4)), g(rng.range(0, 4));
        for (auto& c : f.coeff) c = rng.range(-4, 4);
        for (auto& c : g.coeff) c = rng.range(-4, 4);
        if (f.is_zero() || g.is_zero()) continue;
        // plant a common factor half the time
        if (trial % 2) {
            BinForm common = form(1, {1, rng.range(-3, 3)});
            f = f * common;
            g = g * common;
        }
        BinForm h = binform_gcd(f, g);
        auto qf = binform_divide(f, h);
        auto qg = binform_divide(g, h);
        REQUIRE(qf.has_value());
        REQUIRE(qg.has_value());
        REQUIRE(*qf * h == f);
        REQUIRE(*qg * h == g);
    }
}

TEST_CASE("s-adic valuation of determinants") {
    auto diag = [](int trunc, const std::vector<int>& powers) {
        SPolyMatrix m(powers.size(), powers.size(), trunc);
        for (std::size_t i = 0; i < powers.size(); ++i)
            m(i, i) = SPoly::monomial(trunc, powers[i], 1);
        return m;
    };
    DetValuation v = s_valuation_of_det(diag(3, {0, 1}));
    REQUIRE(v.valuation == 1);
    REQUIRE(v.leading_unit_nonzero);

    v = s_valuation_of_det(diag(3, {1, 1}));
    REQUIRE(v.valuation == 2);
    REQUIRE(v.leading_unit_nonzero);

    v = s_valuation_of_det(diag(2, {1, 1}));
    REQUIRE(v.valuation == 2);
    REQUIRE_FALSE(v.leading_unit_nonzero);
}

TEST_CASE("det valuation is multiplicative on unimodular-times-diagonal products") {
    SplitMix64 rng(13);
    const int trunc = 9;
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.range(1, 4));
        // unimodular: unit triangular with random strictly lower entries
        auto unit_lower = [&]() {
            SPolyMatrix u(n, n, trunc);
            for (std::size_t i = 0; i < n; ++i) {
                u(i, i) = SPoly(trunc, 1);
                for (std::size_t j = 0; j < i; ++j)
                    u(i, j) = SPoly::monomial(trunc, static_cast<int>(rng.range(0, 2)), rng.range(-3, 3));
            }
            return u;
        };
        auto diag_m = [&]() {
            SPolyMatrix m(n, n, trunc);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = SPoly::monomial(trunc, static_cast<int>(rng.range(0, 2)), 1);
            return m;
        };
        auto mul = [&](const SPolyMatrix& a, const SPolyMatrix& b) {
            SPolyMatrix r(n, n, trunc);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) r(i, j) = r(i, j) + a(i, k) * b(k, j);
            return r;
        };
        SPolyMatrix a = mul(unit_lower(), diag_m());
        SPolyMatrix b = mul(diag_m(), unit_lower());
        DetValuation va = s_valuation_of_det(a), vb = s_valuation_of_det(b);
        DetValuation vab = s_valuation_of_det(mul(a, b));
        if (va.leading_unit_nonzero && vb.leading_unit_nonzero &&
            va.valuation + vb.valuation < trunc) {
            REQUIRE(vab.leading_unit_nonzero);
            REQUIRE(vab.valuation == va.valuation + vb.valuation);
        }
    }
}
