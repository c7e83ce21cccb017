#include "rindex/sparse_bits.hpp"

#include <cassert>
#include <string>

namespace ridx {

SparseBits SparseBits::from_positions(std::vector<std::uint64_t> positions,
                                      std::uint64_t universe) {
    SparseBits out;
    out.universe_ = universe;
    for (std::size_t i = 0; i < positions.size(); i++) {
        if (positions[i] < 1 || positions[i] > universe)
            throw OutOfUniverse("position " + std::to_string(positions[i]) +
                                " outside universe [1.." + std::to_string(universe) + "]");
        if (i > 0 && positions[i] <= positions[i - 1])
            throw NotSorted("positions must be strictly increasing");
    }
    out.positions_ = std::move(positions);
    out.build_directory();
    return out;
}

void SparseBits::build_directory() {
    const std::uint64_t t = positions_.size();
    bucket_first_.clear();
    if (t == 0) return;
    bucket_width_ = (universe_ + t - 1) / t;  // ceil, >= 1
    bucket_first_.assign(t + 1, t);
    // bucket b spans positions (b*width .. (b+1)*width]
    std::uint64_t b = 0;
    for (std::uint64_t i = 0; i < t; i++) {
        std::uint64_t home = (positions_[i] - 1) / bucket_width_;
        while (b <= home) bucket_first_[b++] = i;
    }
    while (b <= t) bucket_first_[b++] = t;
}

std::uint64_t SparseBits::rank1_probed(std::uint64_t i, std::uint64_t* probes) const {
    if (i > universe_)
        throw OutOfUniverse("rank1(" + std::to_string(i) + ") beyond universe " +
                            std::to_string(universe_));
    const std::uint64_t t = positions_.size();
    if (t == 0 || i == 0) return 0;
    std::uint64_t b = (i - 1) / bucket_width_;
    if (probes) (*probes)++;  // one directory access
    std::uint64_t lo = bucket_first_[b];
    std::uint64_t hi = b + 1 < bucket_first_.size() ? bucket_first_[b + 1] : t;
    // count of positions <= i equals lo plus matches inside bucket b;
    // positions before lo are < bucket start <= i by construction
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (probes) (*probes)++;
        if (positions_[mid] <= i)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t SparseBits::select1(std::uint64_t k) const {
    if (k < 1 || k > positions_.size())
        throw RankOutOfRange("select1(" + std::to_string(k) + ") with only " +
                             std::to_string(positions_.size()) + " positions");
    return positions_[k - 1];
}

std::optional<std::uint64_t> SparseBits::pred(std::uint64_t i) const {
    if (i < 1 || i > universe_)
        throw OutOfUniverse("pred(" + std::to_string(i) + ") outside [1.." +
                            std::to_string(universe_) + "]");
    std::uint64_t r = rank1(i);
    if (r == 0) return std::nullopt;
    return positions_[r - 1];
}

std::optional<std::uint64_t> SparseBits::succ(std::uint64_t i) const {
    if (i < 1 || i > universe_)
        throw OutOfUniverse("succ(" + std::to_string(i) + ") outside [1.." +
                            std::to_string(universe_) + "]");
    std::uint64_t r = rank1(i - 1);
    if (r >= positions_.size()) return std::nullopt;
    return positions_[r];
}

void SparseBits::serialize(ByteWriter& w) const {
    w.u64le(universe_);
    w.u64le(positions_.size());
    std::uint64_t prev = 0;
    for (std::uint64_t p : positions_) {
        w.varint(p - prev);
        prev = p;
    }
}

SparseBits SparseBits::deserialize(ByteReader& r) {
    SparseBits out;
    out.universe_ = r.u64le();
    std::uint64_t t = r.u64le();
    out.positions_.reserve(t);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < t; i++) {
        std::uint64_t d = r.varint();
        if (d == 0) throw BadIndex("zero delta in position stream");
        prev += d;
        if (prev > out.universe_) throw BadIndex("position beyond universe");
        out.positions_.push_back(prev);
    }
    out.build_directory();
    return out;
}

}  // namespace ridx
