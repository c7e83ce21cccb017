/* suffix.hpp — suffix array, inverse, LCP and BWT over a prepared text */

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rindex/text.hpp"

namespace ridx {

// all arrays are stored 0-based but hold 1-based positions/rows;
// sa[p-1] is the text position of the p-th smallest suffix
struct SuffixStructures {
    std::vector<std::uint64_t> sa;
    std::vector<std::uint64_t> isa;
    std::vector<std::uint64_t> lcp;  // lcp[0] = 0; lcp[p-1] = LCP of rows p-1 and p
    std::vector<std::uint16_t> bwt;  // bwt[p-1] = symbol preceding suffix at row p (wraps at row of T[1])
};

// linear-time induced-sorting construction
std::vector<std::uint64_t> build_sa(const PreparedText& text);

std::vector<std::uint64_t> build_isa(std::span<const std::uint64_t> sa);

// Kasai's algorithm, O(n)
std::vector<std::uint64_t> build_lcp(const PreparedText& text, std::span<const std::uint64_t> sa,
                                     std::span<const std::uint64_t> isa);

std::vector<std::uint16_t> build_bwt(const PreparedText& text, std::span<const std::uint64_t> sa);

SuffixStructures build_suffix_structures(const PreparedText& text);

// reference pattern matching by direct text scan; empty pattern matches every
// position 1..n; a pattern with a byte absent from the text matches nowhere
std::vector<std::uint64_t> naive_locate(const PreparedText& text,
                                        std::span<const std::uint8_t> pattern);

}  // namespace ridx
