#pragma once

#include <cstdint>
#include <limits>

namespace halin {

using NodeId = int32_t;
using EdgeId = int32_t;
using Cost = int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr EdgeId kNoEdge = -1;

// Infeasible / unreachable sentinel.  Strictly larger than any reachable sum
// so saturating addition never wraps.
inline constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

inline Cost sat_add(Cost a, Cost b) {
    if (a >= kInf || b >= kInf) return kInf;
    return a + b;
}

}  // namespace halin
