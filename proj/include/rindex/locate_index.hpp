/* locate_index.hpp — pattern counting and occurrence reporting in run-compressed space */

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rindex/rle_bwt.hpp"
#include "rindex/suffix.hpp"
#include "rindex/text.hpp"

namespace ridx {

enum class Direction { Forward, Backward };

// result of a backward search that also tracked one suffix-array entry:
// sa_ep is the text position of the suffix at the last row of the range
struct Toehold {
    Range range;
    std::uint64_t sa_ep = 0;
};

// byte<->code mapping carried by the index so queries accept raw bytes
struct AlphabetMap {
    std::uint32_t sigma = 1;
    std::array<std::int16_t, 257> byte_of{};
    std::array<std::int16_t, 256> code_of{};

    static AlphabetMap from_text(const PreparedText& t) {
        return AlphabetMap{t.sigma, t.byte_of, t.code_of};
    }
    void serialize(ByteWriter& w) const;
    static AlphabetMap deserialize(ByteReader& r);
};

// per-row windows around run borders: lets one suffix-array (or LCP) value be
// extended to its s neighbours without stored SA/LCP arrays
struct WindowTables {
    std::uint32_t s = 0;
    std::vector<std::uint64_t> w;         // text position minus one per border-near row, BWT row order
    std::vector<std::uint64_t> lcp_at_w;  // LCP entry of the same rows
    SparseBits near_end;                  // text positions of rows within s of their run's last row
    SparseBits near_start;                // text positions of rows within s of their run's first row
    std::vector<std::uint64_t> w_of_near_end;    // index into w per near_end position
    std::vector<std::uint64_t> w_of_near_start;  // index into w per near_start position
    std::uint64_t w_terminator = 0;              // index into w of the row whose suffix is T[1..]

    void serialize(ByteWriter& wr) const;
    static WindowTables deserialize(ByteReader& r);
};

class LocateIndex {
  public:
    LocateIndex() = default;

    // window_width 0 builds no window tables
    static LocateIndex build(const PreparedText& text, const SuffixStructures& st,
                             std::uint32_t window_width);

    std::uint64_t size() const { return rlbwt_.size(); }
    std::uint64_t run_count() const { return rlbwt_.run_count(); }
    const RunLengthBWT& rlbwt() const { return rlbwt_; }
    const AlphabetMap& alphabet() const { return alpha_; }
    bool has_windows() const { return windows_.has_value(); }
    const WindowTables& windows() const;
    std::uint64_t last_suffix_position() const { return sa_last_; }  // SA[n]

    // row range whose suffixes start with the pattern; empty optional when none;
    // the empty pattern matches every row
    std::optional<Range> count(std::span<const std::uint8_t> pattern) const;

    // same range plus the suffix position of its last row, maintained per step
    std::optional<Toehold> count_with_toehold(std::span<const std::uint8_t> pattern) const;

    // previous suffix position in row order: phi(SA[p]) = SA[p-1], phi(SA[1]) = SA[n]
    std::uint64_t phi(std::uint64_t i) const;

    // all occurrence positions, in descending row order (SA[ep] first)
    std::vector<std::uint64_t> locate(std::span<const std::uint8_t> pattern) const;

    // given v = SA[p]: the next (Forward: SA[p+1..p+count]) or previous
    // (Backward: SA[p-1], SA[p-2], ...) entries, truncated at the array ends;
    // count must be <= s
    std::vector<std::uint64_t> sa_window(std::uint64_t v, Direction dir,
                                         std::uint32_t count) const;

    // given v = SA[p]: Forward yields LCP[p+1..p+count], Backward yields
    // LCP[p], LCP[p-1], ..., LCP[p-count+1]; truncated at the array ends
    std::vector<std::uint64_t> plcp_window(std::uint64_t v, Direction dir,
                                           std::uint32_t count) const;

    void attach_windows(WindowTables wt) { windows_ = std::move(wt); }

    void serialize(ByteWriter& w) const;  // marks/samples part only; companions have their own
    static LocateIndex deserialize(ByteReader& r, RunLengthBWT rlbwt, AlphabetMap alpha);

  private:
    RunLengthBWT rlbwt_;
    SparseBits first_marks_;  // text positions of the first character of each row-run phrase
    std::vector<std::uint64_t> first_to_run_;  // k-th marked position -> its run index
    std::vector<std::uint64_t> samples_last_;  // per run: text position of its last row's char
    std::uint64_t sa_last_ = 0;                // SA[n]
    AlphabetMap alpha_;
    std::optional<WindowTables> windows_;

    struct WindowBase {
        std::uint64_t w_index;  // base index into windows_->w (row of the predecessor entry)
        std::uint64_t offset;   // v minus the predecessor position (or v itself)
        std::uint64_t delta;    // LCP correction: offset - 1
    };
    WindowBase window_base(const SparseBits& marks, const std::vector<std::uint64_t>& w_of,
                           std::uint64_t v) const;
};

}  // namespace ridx
