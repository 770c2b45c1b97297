#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace curvesplit {

// Exact arithmetic substrate. cpp_rational keeps fractions reduced with a
// positive denominator, which is exactly the Rat invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

inline std::string to_string(const Rat& q) { return q.str(); }

inline Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

}  // namespace curvesplit
