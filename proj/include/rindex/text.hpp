/* text.hpp — byte-to-symbol preparation: dense codes with a sentinel terminator */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ridx {

// code 1 is the terminator, smaller than every real symbol
inline constexpr std::uint16_t kTerminator = 1;

struct PreparedText {
    // symbols[i] is the code of T[i+1]; length n, last entry is the terminator.
    // codes are dense in [1..sigma] and order-preserving on the original bytes.
    std::vector<std::uint16_t> symbols;
    std::uint32_t sigma = 1;
    std::array<std::int16_t, 257> byte_of{};   // code -> original byte, -1 where undefined
    std::array<std::int16_t, 256> code_of{};   // byte -> code, -1 for absent bytes

    std::uint64_t size() const { return symbols.size(); }  // n, terminator included
};

// maps raw bytes to codes and appends the terminator; throws TerminatorInInput on byte 0
PreparedText prepare_text(std::span<const std::uint8_t> raw);

// inverse of prepare_text: decodes symbols[1..n-1] back to the original bytes
std::vector<std::uint8_t> restore_bytes(const PreparedText& text);

}  // namespace ridx
