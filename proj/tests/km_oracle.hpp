#pragma once

// Test-only oracle: the classical plane recursion for rational curves
// through 3d - 1 points, implemented independently of the engine under test.

#include <map>

#include "curvesplit/rat.hpp"

namespace km {

inline curvesplit::Int plane_count(long long d) {
    static std::map<long long, curvesplit::Int> memo;
    if (d == 1) return 1;
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
    curvesplit::Int total = 0;
    for (long long d1 = 1; d1 < d; ++d1) {
        long long d2 = d - d1;
        curvesplit::Int m = plane_count(d1) * plane_count(d2) * curvesplit::Int(d1 * d1 * d2);
        total += m * (curvesplit::Int(d2) * curvesplit::binomial(3 * d - 4, 3 * d1 - 2) -
                      curvesplit::Int(d1) * curvesplit::binomial(3 * d - 4, 3 * d1 - 1));
    }
    memo[d] = total;
    return total;
}

}  // namespace km
