#pragma once

#include <stdexcept>
#include <string>

namespace curvesplit {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated caller contract (bad input, unmet hypothesis). CLI exit code 3.
struct precondition_error : error {
    using error::error;
};

// Internal cross-check failed: decoder ambiguity, catalog/oracle mismatch,
// symbolic residue that should have cancelled. These are findings, not
// crashes. CLI exit code 4.
struct inconsistency_error : error {
    using error::error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw precondition_error(msg);
}

inline void check_consistent(bool cond, const std::string& msg) {
    if (!cond) throw inconsistency_error(msg);
}

}  // namespace curvesplit
