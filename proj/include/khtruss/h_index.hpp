#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace khtruss {

// H-index of a multiset: the largest y such that at least y elements are
// >= y. Empty input gives 0. Counting-sort formulation, O(n).
inline std::int32_t h_index(std::span<const std::int32_t> values) {
    const auto n = static_cast<std::int32_t>(values.size());
    if (n == 0) return 0;
    std::vector<std::int32_t> count(static_cast<std::size_t>(n) + 1, 0);
    for (std::int32_t v : values) ++count[static_cast<std::size_t>(std::clamp(v, 0, n))];
    std::int32_t y = n;
    std::int32_t at_least = count[static_cast<std::size_t>(n)];
    while (at_least < y) {
        --y;
        at_least += count[static_cast<std::size_t>(y)];
    }
    return y;
}

inline std::int32_t h_index(const std::vector<std::int32_t>& values) {
    return h_index(std::span<const std::int32_t>(values));
}

}  // namespace khtruss
