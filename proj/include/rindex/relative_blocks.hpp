/* relative_blocks.hpp — multi-level copy structure giving random access to the text,
 * the suffix array and its inverse in space governed by the BWT run count */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rindex/locate_index.hpp"
#include "rindex/suffix.hpp"
#include "rindex/text.hpp"

namespace ridx {

enum class BlockDomain : std::uint8_t {
    Text = 0,     // symbols of T; anchors at phrase-start text positions
    DiffSa = 1,   // differenced suffix array; anchors at run-start rows
    DiffIsa = 2,  // differenced inverse suffix array; anchors at phrase-start text positions
};

// Level 0 partitions [1..n] into blocks of width ceil(n/r).  Every deeper level
// keeps, around each anchor, overlapping half-blocks of halved width; each
// in-range block stores one pointer to an equal-content region ("copy") that is
// guaranteed to lie inside some anchor's area one level down.  The level where
// widths drop below 4*leaf_width stores its areas verbatim.  Differenced
// domains carry an additive correction per pointer so absolute values can be
// rebuilt from the leaf cells alone.
class RelativeBlocks {
  public:
    RelativeBlocks() = default;

    // leaf_width 0 selects the default max(4, ceil(log2(n/r)))
    static RelativeBlocks build(BlockDomain domain, const PreparedText& text,
                                const SuffixStructures& st, std::uint32_t leaf_width);

    BlockDomain domain() const { return domain_; }
    std::uint64_t size() const { return n_; }
    std::uint32_t leaf_width() const { return leaf_width_; }
    std::uint64_t anchor_count() const { return anchors_.size(); }
    const std::vector<std::uint64_t>& anchor_positions() const { return anchors_; }
    bool is_degenerate() const { return degenerate_; }
    // level count including the leaf level (1 when degenerate)
    std::uint64_t level_count() const { return degenerate_ ? 1 : s_levels_.size() + 1; }
    std::uint64_t leaf_cell_count() const;
    std::uint64_t boundary_cell_count() const;  // cells stored explicitly above the leaves
    std::uint64_t pointer_count() const;

    // raw bytes T[i..i+len-1]; the terminator is not extractable, so i+len-1 <= n-1
    std::vector<std::uint8_t> extract(std::uint64_t i, std::uint64_t len) const;

    // suffix-array values SA[p..p+len-1] (DiffSa domain)
    std::vector<std::uint64_t> sa_range(std::uint64_t p, std::uint64_t len) const;
    std::uint64_t sa_at(std::uint64_t p) const { return sa_range(p, 1)[0]; }

    // inverse suffix-array values ISA[i..i+len-1] (DiffIsa domain)
    std::vector<std::uint64_t> isa_range(std::uint64_t i, std::uint64_t len) const;

    // re-verifies every stored pointer and cell against freshly built references;
    // throws std::logic_error on any violation
    void validate(const PreparedText& text, const SuffixStructures& st) const;

    void serialize(ByteWriter& w) const;
    static RelativeBlocks deserialize(ByteReader& r);

  private:
    struct Pointer {
        std::uint32_t anchor_id = 0;  // target anchor, 0-based
        std::uint64_t offset = 0;     // copy start minus the target area's (unclamped) origin
        std::int64_t correction = 0;  // prefix base at source minus prefix base at copy
    };
    struct HalfBlock {
        bool is_explicit = false;
        Pointer ptr;
        std::vector<std::int64_t> cells;  // in-range cells when explicit
        std::int64_t abs_base = 0;        // prefix value before the first stored cell
    };
    struct Leaf {
        std::vector<std::int64_t> cells;
        std::int64_t abs_base = 0;
    };

    std::int64_t area_origin(std::uint32_t anchor_id, std::uint64_t level) const;
    std::uint64_t half_step(std::uint64_t level) const;    // candidate grid pitch
    std::uint64_t half_count(std::uint64_t level) const;   // half-blocks per anchor
    std::uint64_t block_end(std::uint64_t pos) const;      // end of the level-0 block of pos
    void read_chunk(std::uint64_t x, std::uint64_t len, std::int64_t* out) const;
    std::vector<std::int64_t> values(std::uint64_t x, std::uint64_t len) const;

    BlockDomain domain_ = BlockDomain::Text;
    std::uint64_t n_ = 0;
    std::uint32_t leaf_width_ = 0;  // alpha
    AlphabetMap alpha_map_;         // byte decoding for the Text domain
    std::vector<std::uint64_t> anchors_;
    bool degenerate_ = false;
    std::vector<std::int64_t> explicit_values_;  // absolute values when degenerate
    std::uint64_t top_width_ = 0;                // level-0 block width, ceil(n/r)
    std::vector<std::uint64_t> s_levels_;        // area half-width per level 1..l*
    std::vector<Pointer> level0_;
    std::vector<std::vector<HalfBlock>> levels_;  // levels 1..l*-1, anchor-major
    std::vector<Leaf> leaves_;                    // level l*, per anchor
};

// LCP[p..p+len-1] assembled from suffix-array access plus LCP windows
std::vector<std::uint64_t> lcp_range(const RelativeBlocks& sa_blocks, const LocateIndex& loc,
                                     std::uint64_t p, std::uint64_t len);

}  // namespace ridx
