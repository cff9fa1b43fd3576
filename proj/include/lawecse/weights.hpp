#pragma once

#include <cmath>
#include <limits>

namespace lawecse {

// Extended-real weight. -infinity marks a forbidden label pair (or an absent
// matching edge); +infinity is only ever used as the skip penalty.
using Weight = double;

inline constexpr Weight kNegInfinity = -std::numeric_limits<Weight>::infinity();
inline constexpr Weight kPosInfinity = std::numeric_limits<Weight>::infinity();

inline bool is_neg_infinite(Weight w) { return std::isinf(w) && w < 0; }
inline bool is_pos_infinite(Weight w) { return std::isinf(w) && w > 0; }

}  // namespace lawecse
