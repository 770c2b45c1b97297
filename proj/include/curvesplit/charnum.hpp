#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curvesplit/errors.hpp"
#include "curvesplit/rat.hpp"

namespace curvesplit {

// Incidence problem: rational curves of degree d in P^n meeting generic
// linear spaces of the given codimensions.
struct IncidenceProblem {
    long long n = 0;
    long long d = 0;
    std::vector<long long> conditions;
};

inline long long dim_incidence(long long n, long long d, const std::vector<long long>& conds) {
    long long s = 0;
    for (long long a : conds) s += a - 1;
    return (n + 1) * d + n - 3 - s;
}

// Base case d = 1: product of special Schubert classes on the Grassmannian
// of lines, evaluated against the point class by the Pieri rule on two-row
// partitions bounded by n-1.
inline Int pieri_lines(long long n, const std::vector<long long>& strips) {
    require(n >= 2, "pieri_lines wants n >= 2");
    long long total = 0;
    for (long long m : strips) {
        require(m >= 0, "negative strip degree");
        total += m;
    }
    if (total != 2 * (n - 1)) return 0;
    std::map<std::pair<long long, long long>, Int> cls;
    cls[{0, 0}] = 1;
    for (long long m : strips) {
        if (m == 0) continue;
        std::map<std::pair<long long, long long>, Int> next;
        for (auto& [part, c] : cls) {
            auto [p, q] = part;
            for (long long p2 = p; p2 <= n - 1; ++p2) {
                long long q2 = p + q + m - p2;
                if (q2 < q || q2 > p) continue;
                next[{p2, q2}] += c;
            }
        }
        cls = std::move(next);
    }
    auto it = cls.find({n - 1, n - 1});
    return it == cls.end() ? Int(0) : it->second;
}

// Recursion engine for the characteristic numbers N_d(a.) and the pencil
// intersection table built on them. Single-threaded; the memo cache is the
// only state and can be disabled to check transparency.
class CharnumEngine {
  public:
    explicit CharnumEngine(long long n, bool use_cache = true) : n_(n), use_cache_(use_cache) {
        require(n >= 2, "CharnumEngine wants n >= 2");
    }

    long long n() const { return n_; }

    long long dim(long long d, const std::vector<long long>& conds) const {
        return dim_incidence(n_, d, conds);
    }

    // Characteristic number of a dimension-0 incidence problem.
    Int N(long long d, std::vector<long long> conds) {
        require(d >= 1, "N wants d >= 1");
        Int multiplier = 1;
        std::vector<long long> proper;
        for (long long a : conds) {
            require(a >= 1, "condition codimension must be >= 1");
            if (a == 1)
                multiplier *= d;
            else
                proper.push_back(a);
        }
        for (long long a : proper)
            if (a > n_) return 0;
        std::sort(proper.begin(), proper.end(), std::greater<>());
        require(dim(d, proper) == 0, "N of a problem of dimension != 0");
        return multiplier * N_proper(d, std::move(proper));
    }

    // Degree of the locus swept out by the incidence family.
    Int N_prime(long long d, std::vector<long long> conds) {
        for (long long a : conds)
            if (a > n_) return 0;
        long long b = dim(d, conds);
        if (b < 0 || b >= n_) return 0;
        conds.push_back(b + 1);
        return N(d, std::move(conds));
    }

    // Sum over ordered split terms (d1, I) of N'(d1, I + in) N'(d2, Ic + out)
    // weighted by weight(d1, d2). Marked conditions go into in/out and break
    // the fibre double count; the caller halves unmarked totals.
    Int split_sum(long long d, const std::vector<long long>& pool, const std::vector<long long>& forced_in,
                  const std::vector<long long>& forced_out,
                  const std::function<Int(long long, long long)>& weight) {
        Int total = 0;
        for (long long d1 = 1; d1 <= d - 1; ++d1) {
            long long d2 = d - d1;
            Int w = weight(d1, d2);
            if (w == 0) continue;
            total += w * refined_term(d1, d2, pool, forced_in, forced_out);
        }
        return total;
    }

    // One (d1, d2) layer of split_sum.
    Int refined_term(long long d1, long long d2, const std::vector<long long>& pool,
                     const std::vector<long long>& forced_in, const std::vector<long long>& forced_out) {
        std::vector<std::pair<long long, long long>> groups;  // value, count
        {
            std::map<long long, long long> g;
            for (long long a : pool) ++g[a];
            groups.assign(g.begin(), g.end());
        }
        Int total = 0;
        std::vector<long long> take(groups.size(), 0);
        std::function<void(std::size_t, Int)> rec = [&](std::size_t at, Int ways) {
            if (at == groups.size()) {
                std::vector<long long> in = forced_in, out = forced_out;
                for (std::size_t g = 0; g < groups.size(); ++g) {
                    for (long long i = 0; i < take[g]; ++i) in.push_back(groups[g].first);
                    for (long long i = 0; i < groups[g].second - take[g]; ++i) out.push_back(groups[g].first);
                }
                Int left = N_prime(d1, std::move(in));
                if (left == 0) return;
                total += ways * left * N_prime(d2, std::move(out));
                return;
            }
            for (long long t = 0; t <= groups[at].second; ++t) {
                take[at] = t;
                rec(at + 1, ways * binomial(groups[at].second, t));
            }
        };
        rec(0, Int(1));
        return total;
    }

    // Number of reducible fibres of a generic incidence pencil: half the
    // ordered split total, each fibre being counted once per orientation.
    Int N_reducible(long long d, const std::vector<long long>& conds) {
        require(dim(d, conds) == 1, "N_reducible wants a pencil");
        Int ordered = split_sum(d, conds, {}, {}, [](long long, long long) { return Int(1); });
        check_consistent(ordered % 2 == 0, "ordered reducible count is odd");
        return ordered / 2;
    }

    // Self-intersection -s_i^2 of the marked section of a pencil, through
    // the printed combination of split sums and merged problems. The result
    // is independent of the two auxiliary indices chosen; they default to
    // the first two others but can be pinned for that cross-check.
    Int m_invariant(long long d, const std::vector<long long>& conds, std::size_t i,
                    std::size_t j = static_cast<std::size_t>(-1),
                    std::size_t p = static_cast<std::size_t>(-1)) {
        require(dim(d, conds) == 1, "m_invariant wants a pencil");
        require(conds.size() >= 3, "m_invariant needs three distinct marked conditions");
        if (j == static_cast<std::size_t>(-1)) j = (i == 0) ? 1 : 0;
        if (p == static_cast<std::size_t>(-1)) {
            p = 0;
            while (p == i || p == j) ++p;
        }
        require(j < conds.size() && p < conds.size() && i != j && i != p && j != p,
                "auxiliary indices must be distinct");
        Int twice = section_dot_fibrepart(d, conds, i, j) + section_dot_fibrepart(d, conds, i, p) -
                    section_dot_fibrepart(d, conds, j, p);
        check_consistent(twice % 2 == 0, "m invariant is not an integer");
        return twice / 2 - sections_dot(d, conds, i, j) - sections_dot(d, conds, i, p) +
               sections_dot(d, conds, j, p);
    }

    // s_i . R_j: split terms with marker i on the I side, marker j off it.
    Int section_dot_fibrepart(long long d, const std::vector<long long>& conds, std::size_t i, std::size_t j) {
        std::vector<long long> pool = without(conds, i, j);
        return split_sum(d, pool, {conds[i]}, {conds[j]}, [](long long, long long) { return Int(1); });
    }

    // s_i . s_j: both markers at one point, conditions merged.
    Int sections_dot(long long d, const std::vector<long long>& conds, std::size_t i, std::size_t j) {
        if (conds[i] + conds[j] > n_) return 0;
        std::vector<long long> merged = without(conds, i, j);
        merged.push_back(conds[i] + conds[j]);
        return N(d, std::move(merged));
    }

    struct PencilNumbers {
        Int L2, L_dot_s, L_dot_R, m, L_dot_K, K2, N_red;
    };

    // The full intersection table of a generic incidence pencil, relative to
    // the marked condition i.
    PencilNumbers intersection_numbers(long long d, const std::vector<long long>& conds, std::size_t i = 0) {
        require(dim(d, conds) == 1, "intersection_numbers wants a pencil");
        for (long long a : conds) require(a >= 2, "intersection table wants proper conditions");
        require(i < conds.size(), "marked index out of range");
        PencilNumbers out;
        std::vector<long long> plus2 = conds;
        plus2.push_back(2);
        out.L2 = N(d, std::move(plus2));
        std::vector<long long> bump = conds;
        bump[i] += 1;
        out.L_dot_s = N(d, std::move(bump));
        out.L_dot_R = L_dot_fibrepart(d, conds, i);
        out.m = m_invariant(d, conds, i);
        out.L_dot_K = -2 * out.L_dot_s - Int(d) * out.m + out.L_dot_R;
        out.N_red = N_reducible(d, conds);
        out.K2 = -out.N_red;
        return out;
    }

    // L . R_i: degree-weighted split terms with marker i on the I side. The
    // swept-locus reading is used for the second factor; the printed plain-N
    // variant is kept evaluable for side-by-side diagnosis.
    Int L_dot_fibrepart(long long d, const std::vector<long long>& conds, std::size_t i,
                        bool printed_variant = false) {
        std::vector<long long> pool = without(conds, i);
        if (!printed_variant)
            return split_sum(d, pool, {conds[i]}, {}, [](long long, long long d2) { return Int(d2); });
        Int total = 0;
        for (long long d1 = 1; d1 <= d - 1; ++d1) {
            long long d2 = d - d1;
            // plain N of the complement side, taken as 0 off dimension 0
            std::map<long long, long long> g;
            for (long long a : pool) ++g[a];
            std::vector<std::pair<long long, long long>> groups(g.begin(), g.end());
            std::vector<long long> take(groups.size(), 0);
            std::function<void(std::size_t, Int)> rec = [&](std::size_t at, Int ways) {
                if (at == groups.size()) {
                    std::vector<long long> in = {conds[i]}, out;
                    for (std::size_t k = 0; k < groups.size(); ++k) {
                        for (long long t = 0; t < take[k]; ++t) in.push_back(groups[k].first);
                        for (long long t = 0; t < groups[k].second - take[k]; ++t) out.push_back(groups[k].first);
                    }
                    Int left = N_prime(d1, std::move(in));
                    if (left == 0) return;
                    bool ok = dim(d2, out) == 0;
                    for (long long a : out) ok = ok && a <= n_;
                    if (!ok) return;
                    total += Int(d2) * ways * left * N(d2, std::move(out));
                    return;
                }
                for (long long t = 0; t <= groups[at].second; ++t) {
                    take[at] = t;
                    rec(at + 1, ways * binomial(groups[at].second, t));
                }
            };
            rec(0, Int(1));
        }
        return total;
    }

    std::size_t cache_size() const { return memo_.size(); }
    const std::map<std::pair<long long, std::vector<long long>>, Int>& cache() const { return memo_; }
    void preload(long long d, std::vector<long long> conds, Int value) {
        memo_[{d, std::move(conds)}] = std::move(value);
    }

  private:
    static std::vector<long long> without(const std::vector<long long>& v, std::size_t i) {
        std::vector<long long> out;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (k != i) out.push_back(v[k]);
        return out;
    }
    static std::vector<long long> without(const std::vector<long long>& v, std::size_t i, std::size_t j) {
        std::vector<long long> out;
        for (std::size_t k = 0; k < v.size(); ++k)
            if (k != i && k != j) out.push_back(v[k]);
        return out;
    }

    // conds: proper (all in [2, n]), sorted descending, dimension 0.
    Int N_proper(long long d, std::vector<long long> conds) {
        std::pair<long long, std::vector<long long>> key{d, conds};
        if (use_cache_) {
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Int result;
        if (d == 1) {
            std::vector<long long> strips;
            for (long long a : conds) strips.push_back(a - 1);
            result = pieri_lines(n_, strips);
        } else {
            auto two = std::find(conds.begin(), conds.end(), 2LL);
            if (two != conds.end()) {
                // shorten: remove the codimension-2 condition, leaving a pencil
                std::vector<long long> pool = conds;
                pool.erase(pool.begin() + (two - conds.begin()));
                require(pool.size() >= 3, "pencil with fewer than three conditions");
                std::vector<long long> bump = pool;
                bump[0] += 1;
                Int head = 2 * Int(d) * N(d, std::move(bump));
                Int mid = Int(d) * Int(d) * m_invariant(d, pool, 0);
                std::vector<long long> rest(pool.begin() + 1, pool.end());
                Int tail = split_sum(d, rest, {pool[0]}, {},
                                     [](long long, long long d2) { return Int(d2) * Int(d2); });
                result = head + mid - tail;
            } else {
                // shift weight from the smallest condition to the largest
                // until a codimension-2 condition appears
                long long hi = conds.front(), lo = conds.back();
                std::vector<long long> middle(conds.begin() + 1, conds.end() - 1);
                std::vector<long long> pencil = middle;
                pencil.insert(pencil.begin(), hi);
                pencil.push_back(lo - 1);
                std::sort(pencil.begin(), pencil.end(), std::greater<>());
                std::size_t hi_index = 0;  // hi is the strict maximum of the pencil vector
                std::vector<long long> bump = pencil;
                bump[hi_index] += 1;
                std::vector<long long> merged = middle;
                merged.push_back(hi + lo - 1);
                Int cross = split_sum(d, middle, {hi}, {lo - 1},
                                      [](long long, long long d2) { return Int(d2); });
                result = N(d, std::move(bump)) + Int(d) * N(d, std::move(merged)) - cross +
                         Int(d) * m_invariant(d, pencil, hi_index);
            }
        }
        if (use_cache_) memo_[key] = result;
        return result;
    }

    long long n_;
    bool use_cache_;
    std::map<std::pair<long long, std::vector<long long>>, Int> memo_;
};

}  // namespace curvesplit
