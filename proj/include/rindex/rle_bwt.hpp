/* rle_bwt.hpp — run-length encoded BWT with LF, rank and backward steps in O(log r) */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rindex/sparse_bits.hpp"

namespace ridx {

struct Range {
    std::uint64_t sp = 1, ep = 0;  // 1-based inclusive rows; sp > ep never escapes the API
    bool operator==(const Range&) const = default;
};

class RunLengthBWT {
  public:
    RunLengthBWT() = default;

    // collapses maximal equal-symbol runs; bwt must be nonempty, symbols in [1..sigma]
    static RunLengthBWT from_bwt(std::span<const std::uint16_t> bwt, std::uint32_t sigma);

    std::uint64_t size() const { return n_; }       // n
    std::uint64_t run_count() const { return r_; }  // r
    std::uint32_t sigma() const { return sigma_; }

    // BWT symbol at row p
    std::uint16_t access(std::uint64_t p) const;

    // row of the preceding text position: LF(p) = C[c] + rank_c(p), c = BWT[p]
    std::uint64_t lf(std::uint64_t p) const;

    // occurrences of c in BWT[1..p]; p = 0 allowed
    std::uint64_t rank(std::uint16_t c, std::uint64_t p) const;

    // one backward-search step: rows prefixed by c·suffix; empty optional when none
    std::optional<Range> backward_step(std::uint16_t c, Range range) const;

    // run geometry, runs numbered 1..r
    std::uint64_t run_of(std::uint64_t p) const { return run_starts_.rank1(p); }
    std::uint64_t run_start(std::uint64_t k) const { return run_starts_.select1(k); }
    std::uint64_t run_end(std::uint64_t k) const {
        return k < r_ ? run_starts_.select1(k + 1) - 1 : n_;
    }
    std::uint16_t run_symbol(std::uint64_t k) const { return run_symbols_[k - 1]; }

    // largest run index < k carrying symbol c
    std::optional<std::uint64_t> prev_run_of_symbol(std::uint16_t c, std::uint64_t k) const;

    std::uint64_t smaller_symbol_count(std::uint16_t c) const { return counts_[c]; }  // C[c]

    const SparseBits& run_starts() const { return run_starts_; }

    void serialize(ByteWriter& w) const;
    static RunLengthBWT deserialize(ByteReader& r);

  private:
    void build_support();  // occurrence lists + invariant checks, derived from run_symbols_

    std::uint64_t n_ = 0;
    std::uint64_t r_ = 0;
    std::uint32_t sigma_ = 0;
    SparseBits run_starts_;                        // run head rows over [1..n]
    std::vector<std::uint16_t> run_symbols_;       // symbol per run, adjacent entries differ
    std::vector<std::uint64_t> counts_;            // counts_[c] = #symbols < c in BWT, c in [1..sigma+1]
    std::vector<std::uint64_t> run_counts_;        // run_counts_[c] = #runs of symbols < c
    std::vector<std::uint64_t> sorted_run_lengths_;  // prefix lengths of runs stably sorted by symbol
    std::vector<std::vector<std::uint32_t>> runs_of_symbol_;  // ascending run indices per symbol

    // occurrences of c among the first k runs
    std::uint64_t run_rank(std::uint16_t c, std::uint64_t k) const;
};

}  // namespace ridx
