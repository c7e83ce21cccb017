/* test_util.hpp — tiny shared helpers for the unit tests */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "rindex/suffix.hpp"
#include "rindex/text.hpp"

namespace testutil {

inline std::vector<std::uint8_t> bytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

inline ridx::PreparedText prep(const std::string& s) {
    return ridx::prepare_text(bytes(s));
}

// reference suffix array by direct suffix comparison
inline std::vector<std::uint64_t> naive_sa(const ridx::PreparedText& text) {
    const std::vector<std::uint16_t>& t = text.symbols;
    std::vector<std::uint64_t> sa(t.size());
    std::iota(sa.begin(), sa.end(), 1);
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(t.begin() + static_cast<std::ptrdiff_t>(a - 1), t.end(),
                                            t.begin() + static_cast<std::ptrdiff_t>(b - 1), t.end());
    });
    return sa;
}

}  // namespace testutil
