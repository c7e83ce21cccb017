/* sparse_bits.hpp — sorted position set over [1..universe] with rank/select/pred/succ */

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rindex/serialize.hpp"

namespace ridx {

// stores t strictly increasing positions; a directory of t equal-width buckets
// over the universe narrows every rank query to one bucket, so a lookup costs
// one directory probe plus a binary search over at most ceil(universe/t)
// candidates (no bucket can hold more positions than universe slots it spans)
class SparseBits {
  public:
    SparseBits() = default;

    // throws NotSorted / OutOfUniverse on invalid input
    static SparseBits from_positions(std::vector<std::uint64_t> positions, std::uint64_t universe);

    std::uint64_t universe() const { return universe_; }
    std::uint64_t count() const { return positions_.size(); }  // t

    // number of set positions <= i; accepts 0 <= i <= universe
    std::uint64_t rank1(std::uint64_t i) const { return rank1_probed(i, nullptr); }
    std::uint64_t rank1_probed(std::uint64_t i, std::uint64_t* probes) const;

    // k-th smallest position, 1 <= k <= t; throws RankOutOfRange
    std::uint64_t select1(std::uint64_t k) const;

    // largest set position <= i / smallest set position >= i; empty optional if none
    std::optional<std::uint64_t> pred(std::uint64_t i) const;
    std::optional<std::uint64_t> succ(std::uint64_t i) const;

    void serialize(ByteWriter& w) const;
    static SparseBits deserialize(ByteReader& r);

  private:
    void build_directory();

    std::uint64_t universe_ = 0;
    std::uint64_t bucket_width_ = 1;
    std::vector<std::uint64_t> positions_;
    std::vector<std::uint64_t> bucket_first_;  // per bucket, index of its first position
};

}  // namespace ridx
