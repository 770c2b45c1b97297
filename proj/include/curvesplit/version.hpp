#pragma once

namespace curvesplit {

inline constexpr const char* version = "0.1.0";

}  // namespace curvesplit
