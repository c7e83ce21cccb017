#include "rindex/rle_bwt.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace ridx {

RunLengthBWT RunLengthBWT::from_bwt(std::span<const std::uint16_t> bwt, std::uint32_t sigma) {
    if (bwt.empty()) throw OutOfRange("from_bwt: empty sequence");
    RunLengthBWT out;
    out.n_ = bwt.size();
    out.sigma_ = sigma;

    std::vector<std::uint64_t> starts;
    for (std::uint64_t p = 1; p <= out.n_; p++) {
        std::uint16_t c = bwt[p - 1];
        if (c < 1 || c > sigma) throw OutOfRange("from_bwt: symbol outside [1..sigma]");
        if (p == 1 || c != bwt[p - 2]) {
            starts.push_back(p);
            out.run_symbols_.push_back(c);
        }
    }
    out.r_ = starts.size();
    out.run_starts_ = SparseBits::from_positions(std::move(starts), out.n_);
    out.build_support();

#ifndef NDEBUG
    // cross-check the derived cumulative counts against a direct tally
    std::vector<std::uint64_t> direct(sigma + 2, 0);
    for (std::uint16_t c : bwt) direct[c + 1]++;
    for (std::uint32_t c = 1; c <= sigma + 1; c++) direct[c] += direct[c - 1];
    assert(direct == out.counts_);
#endif
    return out;
}

void RunLengthBWT::build_support() {
    run_counts_.assign(sigma_ + 2, 0);
    runs_of_symbol_.assign(sigma_ + 1, {});
    for (std::uint64_t k = 1; k <= r_; k++) {
        std::uint16_t c = run_symbols_[k - 1];
        assert(k == 1 || c != run_symbols_[k - 2]);
        run_counts_[c + 1]++;
        runs_of_symbol_[c].push_back(static_cast<std::uint32_t>(k));
    }
    for (std::uint32_t c = 1; c <= sigma_ + 1; c++) run_counts_[c] += run_counts_[c - 1];

    // prefix run lengths after stably sorting runs by symbol
    sorted_run_lengths_.assign(r_ + 1, 0);
    std::uint64_t idx = 0, total = 0;
    for (std::uint32_t c = 1; c <= sigma_; c++) {
        for (std::uint32_t k : runs_of_symbol_[c]) {
            total += run_end(k) - run_start(k) + 1;
            sorted_run_lengths_[++idx] = total;
        }
    }
    assert(idx == r_ && total == n_);

    // lengths of runs of smaller symbols add up to the count of smaller symbols
    counts_.assign(sigma_ + 2, 0);
    for (std::uint32_t c = 1; c <= sigma_ + 1; c++)
        counts_[c] = sorted_run_lengths_[run_counts_[c]];
}

std::uint16_t RunLengthBWT::access(std::uint64_t p) const {
    if (p < 1 || p > n_) throw OutOfRange("access(" + std::to_string(p) + ")");
    return run_symbols_[run_of(p) - 1];
}

std::uint64_t RunLengthBWT::run_rank(std::uint16_t c, std::uint64_t k) const {
    const auto& runs = runs_of_symbol_[c];
    return std::upper_bound(runs.begin(), runs.end(), k) - runs.begin();
}

std::uint64_t RunLengthBWT::rank(std::uint16_t c, std::uint64_t p) const {
    if (c < 1 || c > sigma_) throw OutOfRange("rank: symbol outside [1..sigma]");
    if (p > n_) throw OutOfRange("rank(" + std::to_string(p) + ") beyond n");
    if (p == 0) return 0;
    std::uint64_t k = run_of(p);
    std::uint64_t q = run_start(k);
    // full runs of c before run k, then the partial run if row p sits in one
    std::uint64_t full = sorted_run_lengths_[run_counts_[c] + run_rank(c, k - 1)] -
                         sorted_run_lengths_[run_counts_[c]];
    return full + (run_symbols_[k - 1] == c ? p - q + 1 : 0);
}

std::uint64_t RunLengthBWT::lf(std::uint64_t p) const {
    return counts_[access(p)] + rank(access(p), p);
}

std::optional<Range> RunLengthBWT::backward_step(std::uint16_t c, Range range) const {
    if (range.sp < 1 || range.ep > n_ || range.sp > range.ep)
        throw OutOfRange("backward_step: bad range");
    std::uint64_t sp = counts_[c] + rank(c, range.sp - 1) + 1;
    std::uint64_t ep = counts_[c] + rank(c, range.ep);
    if (sp > ep) return std::nullopt;
    return Range{sp, ep};
}

std::optional<std::uint64_t> RunLengthBWT::prev_run_of_symbol(std::uint16_t c,
                                                              std::uint64_t k) const {
    const auto& runs = runs_of_symbol_[c];
    auto it = std::lower_bound(runs.begin(), runs.end(), k);
    if (it == runs.begin()) return std::nullopt;
    return *(it - 1);
}

void RunLengthBWT::serialize(ByteWriter& w) const {
    w.u64le(n_);
    w.u64le(r_);
    w.u32le(sigma_);
    run_starts_.serialize(w);
    PackedInts syms(PackedInts::width_for(sigma_ > 1 ? sigma_ - 1 : 1), r_);
    for (std::uint64_t k = 0; k < r_; k++) syms.set(k, run_symbols_[k] - 1);
    syms.serialize(w);
    PackedInts lens(PackedInts::width_for(n_), r_ + 1);
    for (std::uint64_t k = 0; k <= r_; k++) lens.set(k, sorted_run_lengths_[k]);
    lens.serialize(w);
    for (std::uint32_t c = 0; c <= sigma_ + 1; c++) w.varint(counts_[c]);
    for (std::uint32_t c = 0; c <= sigma_ + 1; c++) w.varint(run_counts_[c]);
}

RunLengthBWT RunLengthBWT::deserialize(ByteReader& r) {
    RunLengthBWT out;
    out.n_ = r.u64le();
    out.r_ = r.u64le();
    out.sigma_ = r.u32le();
    if (out.n_ == 0 || out.r_ == 0 || out.r_ > out.n_ || out.sigma_ == 0 || out.sigma_ > 256)
        throw BadIndex("implausible run-length BWT header");
    out.run_starts_ = SparseBits::deserialize(r);
    if (out.run_starts_.count() != out.r_ || out.run_starts_.universe() != out.n_)
        throw BadIndex("run start set does not match header");
    PackedInts syms = PackedInts::deserialize(r);
    if (syms.size() != out.r_) throw BadIndex("run symbol count mismatch");
    out.run_symbols_.resize(out.r_);
    for (std::uint64_t k = 0; k < out.r_; k++) {
        std::uint64_t v = syms.get(k) + 1;
        if (v > out.sigma_) throw BadIndex("run symbol outside alphabet");
        if (k > 0 && v == out.run_symbols_[k - 1]) throw BadIndex("adjacent equal run symbols");
        out.run_symbols_[k] = static_cast<std::uint16_t>(v);
    }
    PackedInts lens = PackedInts::deserialize(r);
    if (lens.size() != out.r_ + 1) throw BadIndex("run length table mismatch");
    std::vector<std::uint64_t> counts(out.sigma_ + 2, 0);
    for (std::uint32_t c = 0; c <= out.sigma_ + 1; c++) counts[c] = r.varint();
    std::vector<std::uint64_t> run_counts(out.sigma_ + 2, 0);
    for (std::uint32_t c = 0; c <= out.sigma_ + 1; c++) run_counts[c] = r.varint();
    out.build_support();
    // serialized redundant tables must agree with the ones rebuilt from the runs
    for (std::uint64_t k = 0; k <= out.r_; k++)
        if (lens.get(k) != out.sorted_run_lengths_[k])
            throw BadIndex("sorted run length table disagrees");
    if (counts != out.counts_) throw BadIndex("symbol count table disagrees");
    if (run_counts != out.run_counts_) throw BadIndex("run count table disagrees");
    return out;
}

}  // namespace ridx
