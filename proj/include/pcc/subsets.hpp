#pragma once

#include <cstdint>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result;
}

/// All k-subsets of {1,...,n} in lexicographic order of sorted index tuples.
inline std::vector<std::vector<unsigned>> k_subsets(unsigned n, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    if (k > n) return out;
    std::vector<unsigned> cur(k);
    for (unsigned i = 0; i < k; ++i) cur[i] = i + 1;
    while (true) {
        out.push_back(cur);
        // advance to the next lexicographic k-subset
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && cur[static_cast<unsigned>(i)] == n - k + static_cast<unsigned>(i) + 1) --i;
        if (i < 0) break;
        ++cur[static_cast<unsigned>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

inline bool subset_contains(const std::vector<unsigned>& sorted_subset, unsigned element) {
    for (unsigned e : sorted_subset) {
        if (e == element) return true;
        if (e > element) return false;
    }
    return false;
}

inline std::vector<unsigned> subset_without(const std::vector<unsigned>& sorted_subset,
                                            unsigned element) {
    std::vector<unsigned> out;
    out.reserve(sorted_subset.size());
    for (unsigned e : sorted_subset)
        if (e != element) out.push_back(e);
    return out;
}

}  // namespace pcc
