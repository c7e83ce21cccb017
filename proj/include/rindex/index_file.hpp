/* index_file.hpp — complete index: run-length BWT core plus optional window
 * tables and block structures, with a checksummed container format */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rindex/locate_index.hpp"
#include "rindex/relative_blocks.hpp"

namespace ridx {

struct BuildOptions {
    std::uint32_t window_width = 0;  // s; 0 keeps window tables off unless lcp_support
    bool text_blocks = false;        // random access to T without the original file
    bool sa_blocks = false;          // random access to SA
    bool isa_blocks = false;         // random access to ISA
    bool lcp_support = false;        // LCP access; forces sa_blocks and window tables
    std::uint32_t leaf_width = 0;    // block leaf width; 0 picks max(4, ceil(log2(n/r)))
};

struct SectionSize {
    std::string name;
    std::uint64_t bytes = 0;
};

class Index {
  public:
    Index() = default;

    static Index build(const std::vector<std::uint8_t>& text, const BuildOptions& opt);

    std::uint64_t size() const { return loc_.size(); }            // n, terminator included
    std::uint64_t text_size() const { return loc_.size() - 1; }   // original byte count
    std::uint64_t run_count() const { return loc_.run_count(); }  // r
    const LocateIndex& locate_index() const { return loc_; }

    bool has_windows() const { return loc_.has_windows(); }
    bool has_text_blocks() const { return text_.has_value(); }
    bool has_sa_blocks() const { return sa_.has_value(); }
    bool has_isa_blocks() const { return isa_.has_value(); }
    bool has_lcp() const { return has_sa_blocks() && has_windows(); }

    const RelativeBlocks& text_blocks() const;  // throws SectionMissing
    const RelativeBlocks& sa_blocks() const;
    const RelativeBlocks& isa_blocks() const;

    std::uint64_t count(std::span<const std::uint8_t> pattern) const;
    // ascending text positions
    std::vector<std::uint64_t> locate(std::span<const std::uint8_t> pattern) const;
    std::vector<std::uint8_t> extract(std::uint64_t i, std::uint64_t len) const;
    std::vector<std::uint64_t> sa_values(std::uint64_t p, std::uint64_t len) const;
    std::vector<std::uint64_t> isa_values(std::uint64_t i, std::uint64_t len) const;
    std::vector<std::uint64_t> lcp_values(std::uint64_t p, std::uint64_t len) const;

    std::vector<std::uint8_t> serialize() const;
    static Index deserialize(const std::vector<std::uint8_t>& bytes);
    void save(const std::string& path) const;          // throws IoError
    static Index load(const std::string& path);        // throws IoError / BadIndex

    std::vector<SectionSize> section_sizes() const;    // serialized bytes per section

  private:
    LocateIndex loc_;
    std::optional<RelativeBlocks> text_;
    std::optional<RelativeBlocks> sa_;
    std::optional<RelativeBlocks> isa_;
};

}  // namespace ridx
