#include "rindex/text.hpp"

#include <cassert>

#include "rindex/errors.hpp"

namespace ridx {

PreparedText prepare_text(std::span<const std::uint8_t> raw) {
    PreparedText out;
    out.byte_of.fill(-1);
    out.code_of.fill(-1);

    std::array<bool, 256> present{};
    for (std::uint8_t b : raw) {
        if (b == 0)
            throw TerminatorInInput("prepare_text: input contains byte 0x00");
        present[b] = true;
    }

    // dense, order-preserving codes starting right above the terminator
    std::uint16_t next = kTerminator + 1;
    for (int b = 1; b < 256; b++) {
        if (present[b]) {
            out.code_of[b] = static_cast<std::int16_t>(next);
            out.byte_of[next] = static_cast<std::int16_t>(b);
            next++;
        }
    }
    out.sigma = next - 1;

    out.symbols.reserve(raw.size() + 1);
    for (std::uint8_t b : raw) out.symbols.push_back(static_cast<std::uint16_t>(out.code_of[b]));
    out.symbols.push_back(kTerminator);
    return out;
}

std::vector<std::uint8_t> restore_bytes(const PreparedText& text) {
    assert(!text.symbols.empty() && text.symbols.back() == kTerminator);
    std::vector<std::uint8_t> raw;
    raw.reserve(text.symbols.size() - 1);
    for (std::size_t i = 0; i + 1 < text.symbols.size(); i++) {
        std::uint16_t c = text.symbols[i];
        assert(c > kTerminator && c <= text.sigma && text.byte_of[c] >= 0);
        raw.push_back(static_cast<std::uint8_t>(text.byte_of[c]));
    }
    return raw;
}

}  // namespace ridx
