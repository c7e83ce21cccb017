#include "rindex/locate_index.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace ridx {

void AlphabetMap::serialize(ByteWriter& w) const {
    w.u32le(sigma);
    for (std::uint32_t c = 2; c <= sigma; c++) w.u8(static_cast<std::uint8_t>(byte_of[c]));
}

AlphabetMap AlphabetMap::deserialize(ByteReader& r) {
    AlphabetMap out;
    out.sigma = r.u32le();
    if (out.sigma < 1 || out.sigma > 256) throw BadIndex("alphabet size outside [1..256]");
    out.byte_of.fill(-1);
    out.code_of.fill(-1);
    std::int16_t prev = 0;
    for (std::uint32_t c = 2; c <= out.sigma; c++) {
        std::int16_t b = r.u8();
        if (b <= prev) throw BadIndex("alphabet map not strictly increasing");
        out.byte_of[c] = b;
        out.code_of[b] = static_cast<std::int16_t>(c);
        prev = b;
    }
    return out;
}

LocateIndex LocateIndex::build(const PreparedText& text, const SuffixStructures& st,
                               std::uint32_t window_width) {
    LocateIndex out;
    out.alpha_ = AlphabetMap::from_text(text);
    out.rlbwt_ = RunLengthBWT::from_bwt(st.bwt, text.sigma);
    const std::uint64_t n = out.rlbwt_.size();
    const std::uint64_t r = out.rlbwt_.run_count();
    assert(st.sa[0] == n);  // terminator suffix sorts first
    out.sa_last_ = st.sa[n - 1];

    // text position of a row's character, with the terminator row wrapping to n
    auto char_pos = [&](std::uint64_t row) { return st.sa[row - 1] >= 2 ? st.sa[row - 1] - 1 : n; };

    std::vector<std::pair<std::uint64_t, std::uint64_t>> marks;  // (text position, run)
    marks.reserve(r);
    out.samples_last_.resize(r);
    for (std::uint64_t k = 1; k <= r; k++) {
        marks.emplace_back(char_pos(out.rlbwt_.run_start(k)), k);
        out.samples_last_[k - 1] = char_pos(out.rlbwt_.run_end(k));
    }
    std::sort(marks.begin(), marks.end());
    std::vector<std::uint64_t> positions(r);
    out.first_to_run_.resize(r);
    for (std::uint64_t i = 0; i < r; i++) {
        positions[i] = marks[i].first;
        out.first_to_run_[i] = marks[i].second;
    }
    out.first_marks_ = SparseBits::from_positions(std::move(positions), n);

    if (window_width > 0) {
        WindowTables wt;
        wt.s = window_width;
        const std::uint64_t s = window_width;
        std::vector<std::pair<std::uint64_t, std::uint64_t>> near_end, near_start;  // (pos, w idx)
        for (std::uint64_t k = 1; k <= r; k++) {
            std::uint64_t lo = out.rlbwt_.run_start(k), hi = out.rlbwt_.run_end(k);
            std::uint64_t start_hi = std::min(hi, lo + s - 1);     // rows near the run start
            std::uint64_t end_lo = hi >= lo + s ? hi - s + 1 : lo;  // rows near the run end
            for (std::uint64_t row = lo; row <= hi; row++) {
                if (row > start_hi && row < end_lo) {
                    row = end_lo - 1;  // skip the run interior
                    continue;
                }
                std::uint64_t widx = wt.w.size();
                std::uint64_t pos = st.sa[row - 1] - 1;  // 0 for the terminator row, kept as is
                wt.w.push_back(pos);
                wt.lcp_at_w.push_back(st.lcp[row - 1]);
                if (pos == 0) wt.w_terminator = widx;
                if (pos > 0 && row >= end_lo) near_end.emplace_back(pos, widx);
                if (pos > 0 && row <= start_hi) near_start.emplace_back(pos, widx);
            }
        }
        auto pack = [n](std::vector<std::pair<std::uint64_t, std::uint64_t>>& v, SparseBits& bits,
                        std::vector<std::uint64_t>& w_of) {
            std::sort(v.begin(), v.end());
            std::vector<std::uint64_t> pos(v.size());
            w_of.resize(v.size());
            for (std::size_t i = 0; i < v.size(); i++) {
                pos[i] = v[i].first;
                w_of[i] = v[i].second;
            }
            bits = SparseBits::from_positions(std::move(pos), n);
        };
        pack(near_end, wt.near_end, wt.w_of_near_end);
        pack(near_start, wt.near_start, wt.w_of_near_start);
        out.windows_ = std::move(wt);
    }
    return out;
}

const WindowTables& LocateIndex::windows() const {
    if (!windows_) throw WindowsNotBuilt("index was built without window tables");
    return *windows_;
}

std::optional<Range> LocateIndex::count(std::span<const std::uint8_t> pattern) const {
    Range cur{1, rlbwt_.size()};
    for (std::size_t j = pattern.size(); j-- > 0;) {
        std::int16_t c = alpha_.code_of[pattern[j]];
        if (c < 0) return std::nullopt;
        auto next = rlbwt_.backward_step(static_cast<std::uint16_t>(c), cur);
        if (!next) return std::nullopt;
        cur = *next;
    }
    return cur;
}

std::optional<Toehold> LocateIndex::count_with_toehold(
    std::span<const std::uint8_t> pattern) const {
    Toehold th{Range{1, rlbwt_.size()}, sa_last_};
    for (std::size_t j = pattern.size(); j-- > 0;) {
        std::int16_t mapped = alpha_.code_of[pattern[j]];
        if (mapped < 0) return std::nullopt;
        std::uint16_t c = static_cast<std::uint16_t>(mapped);
        auto next = rlbwt_.backward_step(c, th.range);
        if (!next) return std::nullopt;
        if (rlbwt_.access(th.range.ep) == c) {
            // the old last row extends: its suffix position moves one left
            assert(th.sa_ep >= 2);
            th.sa_ep--;
        } else {
            // the new last row descends from the last c in the range: the last
            // row of the last c-run before the run holding ep, whose sample we keep
            auto k = rlbwt_.prev_run_of_symbol(c, rlbwt_.run_of(th.range.ep));
            assert(k.has_value());
            th.sa_ep = samples_last_[*k - 1];
        }
        th.range = *next;
    }
    return th;
}

std::uint64_t LocateIndex::phi(std::uint64_t i) const {
    const std::uint64_t n = rlbwt_.size();
    if (i < 1 || i > n) throw OutOfRange("phi(" + std::to_string(i) + ") outside [1..n]");
    if (i == n) return sa_last_;  // row of T[n..] is row 1, so the previous row wraps to row n
    // k is the text position whose row is one above the row of suffix i
    std::uint64_t k = i == 1 ? n : i - 1;
    std::uint64_t m = first_marks_.rank1(k);
    std::uint64_t mark, delta;
    if (m >= 1) {
        mark = first_marks_.select1(m);
        delta = k - mark;
    } else {
        // no mark at or before k: the scan wraps past position 1 to the mark at n
        m = rlbwt_.run_count();
        mark = first_marks_.select1(m);
        assert(mark == n);
        delta = k;
    }
    std::uint64_t run = first_to_run_[m - 1];
    assert(run >= 2);  // run 1 starts at row 1 whose predecessor row exists only via the wrap
    // the sample is a character position with SA value 1 wrapped to n; as an
    // additive base that wrap must count as 0 (the row above the mark's run
    // start can be the terminator-character row)
    std::uint64_t base = samples_last_[run - 2];
    if (base == n) base = 0;
    std::uint64_t out = base + 1 + delta;
    assert(out >= 1 && out <= n);
    return out;
}

std::vector<std::uint64_t> LocateIndex::locate(std::span<const std::uint8_t> pattern) const {
    auto th = count_with_toehold(pattern);
    std::vector<std::uint64_t> out;
    if (!th) return out;
    out.reserve(th->range.ep - th->range.sp + 1);
    std::uint64_t v = th->sa_ep;
    out.push_back(v);
    for (std::uint64_t p = th->range.ep; p > th->range.sp; p--) {
        v = phi(v);
        out.push_back(v);
    }
    return out;
}

LocateIndex::WindowBase LocateIndex::window_base(const SparseBits& marks,
                                                 const std::vector<std::uint64_t>& w_of,
                                                 std::uint64_t v) const {
    if (v >= 2) {
        std::uint64_t m = marks.rank1(v - 1);
        if (m >= 1) {
            std::uint64_t mark = marks.select1(m);
            return WindowBase{w_of[m - 1], v - mark, v - mark - 1};
        }
    }
    // nothing below v: the walk bottoms out at the terminator row's entry
    return WindowBase{windows_->w_terminator, v, v - 1};
}

std::vector<std::uint64_t> LocateIndex::sa_window(std::uint64_t v, Direction dir,
                                                  std::uint32_t count) const {
    const WindowTables& wt = windows();
    const std::uint64_t n = rlbwt_.size();
    if (v < 1 || v > n) throw OutOfRange("sa_window: position outside [1..n]");
    if (count > wt.s) throw OutOfRange("sa_window: count exceeds window width s");
    std::vector<std::uint64_t> out;
    if (count == 0) return out;
    if (dir == Direction::Forward) {
        if (v == sa_last_) return out;  // v sits at the last row
        WindowBase wb = window_base(wt.near_end, wt.w_of_near_end, v);
        for (std::uint32_t j = 1; j <= count; j++) {
            assert(wb.w_index + j < wt.w.size());
            std::uint64_t val = wt.w[wb.w_index + j] + wb.offset;
            out.push_back(val);
            if (val == sa_last_) break;  // reached the last row
        }
    } else {
        if (v == n) return out;  // v sits at row 1
        WindowBase wb = window_base(wt.near_start, wt.w_of_near_start, v);
        for (std::uint32_t j = 1; j <= count; j++) {
            assert(wb.w_index >= j);
            std::uint64_t val = wt.w[wb.w_index - j] + wb.offset;
            out.push_back(val);
            if (val == n) break;  // reached row 1
        }
    }
    return out;
}

std::vector<std::uint64_t> LocateIndex::plcp_window(std::uint64_t v, Direction dir,
                                                    std::uint32_t count) const {
    const WindowTables& wt = windows();
    const std::uint64_t n = rlbwt_.size();
    if (v < 1 || v > n) throw OutOfRange("plcp_window: position outside [1..n]");
    if (count > wt.s) throw OutOfRange("plcp_window: count exceeds window width s");
    std::vector<std::uint64_t> out;
    if (count == 0) return out;
    if (dir == Direction::Forward) {
        if (v == sa_last_) return out;
        WindowBase wb = window_base(wt.near_end, wt.w_of_near_end, v);
        for (std::uint32_t j = 1; j <= count; j++) {
            assert(wb.w_index + j < wt.w.size());
            assert(wt.lcp_at_w[wb.w_index + j] >= wb.delta);
            out.push_back(wt.lcp_at_w[wb.w_index + j] - wb.delta);
            if (wt.w[wb.w_index + j] + wb.offset == sa_last_) break;
        }
    } else {
        WindowBase wb = window_base(wt.near_start, wt.w_of_near_start, v);
        for (std::uint32_t j = 1; j <= count; j++) {
            assert(wb.w_index + 1 >= j);
            std::uint64_t idx = wb.w_index + 1 - j;
            assert(wt.lcp_at_w[idx] >= wb.delta);
            out.push_back(wt.lcp_at_w[idx] - wb.delta);
            if (wt.w[idx] + wb.offset == n) break;  // emitted LCP[1]
        }
    }
    return out;
}

void LocateIndex::serialize(ByteWriter& w) const {
    const std::uint64_t n = rlbwt_.size(), r = rlbwt_.run_count();
    first_marks_.serialize(w);
    PackedInts ftr(PackedInts::width_for(r > 1 ? r - 1 : 1), r);
    for (std::uint64_t i = 0; i < r; i++) ftr.set(i, first_to_run_[i] - 1);
    ftr.serialize(w);
    PackedInts smp(PackedInts::width_for(n > 1 ? n - 1 : 1), r);
    for (std::uint64_t i = 0; i < r; i++) smp.set(i, samples_last_[i] - 1);
    smp.serialize(w);
    w.u64le(sa_last_);
}

LocateIndex LocateIndex::deserialize(ByteReader& r, RunLengthBWT rlbwt, AlphabetMap alpha) {
    LocateIndex out;
    out.rlbwt_ = std::move(rlbwt);
    out.alpha_ = std::move(alpha);
    const std::uint64_t n = out.rlbwt_.size(), runs = out.rlbwt_.run_count();
    out.first_marks_ = SparseBits::deserialize(r);
    if (out.first_marks_.count() != runs || out.first_marks_.universe() != n)
        throw BadIndex("mark set does not match run count");
    PackedInts ftr = PackedInts::deserialize(r);
    PackedInts smp = PackedInts::deserialize(r);
    if (ftr.size() != runs || smp.size() != runs) throw BadIndex("sample table size mismatch");
    out.first_to_run_.resize(runs);
    out.samples_last_.resize(runs);
    std::vector<bool> seen(runs + 1, false);
    for (std::uint64_t i = 0; i < runs; i++) {
        out.first_to_run_[i] = ftr.get(i) + 1;
        out.samples_last_[i] = smp.get(i) + 1;
        if (out.first_to_run_[i] > runs || seen[out.first_to_run_[i]])
            throw BadIndex("mark-to-run table is not a permutation");
        seen[out.first_to_run_[i]] = true;
        if (out.samples_last_[i] > n) throw BadIndex("sample position beyond n");
    }
    out.sa_last_ = r.u64le();
    if (out.sa_last_ < 1 || out.sa_last_ > n) throw BadIndex("last suffix position beyond n");
    return out;
}

void WindowTables::serialize(ByteWriter& wr) const {
    wr.u32le(s);
    std::uint64_t t = w.size();
    wr.u64le(t);
    std::uint64_t maxval = 0;
    for (std::uint64_t v : w) maxval = std::max(maxval, v);
    for (std::uint64_t v : lcp_at_w) maxval = std::max(maxval, v);
    PackedInts vals(PackedInts::width_for(maxval), 2 * t);
    for (std::uint64_t i = 0; i < t; i++) {
        vals.set(2 * i, w[i]);
        vals.set(2 * i + 1, lcp_at_w[i]);
    }
    vals.serialize(wr);
    near_end.serialize(wr);
    near_start.serialize(wr);
    PackedInts fe(PackedInts::width_for(t > 1 ? t - 1 : 1), w_of_near_end.size());
    for (std::size_t i = 0; i < w_of_near_end.size(); i++) fe.set(i, w_of_near_end[i]);
    fe.serialize(wr);
    PackedInts fs(PackedInts::width_for(t > 1 ? t - 1 : 1), w_of_near_start.size());
    for (std::size_t i = 0; i < w_of_near_start.size(); i++) fs.set(i, w_of_near_start[i]);
    fs.serialize(wr);
    wr.u64le(w_terminator);
}

WindowTables WindowTables::deserialize(ByteReader& r) {
    WindowTables out;
    out.s = r.u32le();
    if (out.s == 0) throw BadIndex("window width zero");
    std::uint64_t t = r.u64le();
    PackedInts vals = PackedInts::deserialize(r);
    if (vals.size() != 2 * t) throw BadIndex("window value table size mismatch");
    out.w.resize(t);
    out.lcp_at_w.resize(t);
    for (std::uint64_t i = 0; i < t; i++) {
        out.w[i] = vals.get(2 * i);
        out.lcp_at_w[i] = vals.get(2 * i + 1);
    }
    out.near_end = SparseBits::deserialize(r);
    out.near_start = SparseBits::deserialize(r);
    PackedInts fe = PackedInts::deserialize(r);
    PackedInts fs = PackedInts::deserialize(r);
    if (fe.size() != out.near_end.count() || fs.size() != out.near_start.count())
        throw BadIndex("window mapping size mismatch");
    out.w_of_near_end.resize(fe.size());
    for (std::uint64_t i = 0; i < fe.size(); i++) {
        out.w_of_near_end[i] = fe.get(i);
        if (out.w_of_near_end[i] >= t) throw BadIndex("window mapping out of bounds");
    }
    out.w_of_near_start.resize(fs.size());
    for (std::uint64_t i = 0; i < fs.size(); i++) {
        out.w_of_near_start[i] = fs.get(i);
        if (out.w_of_near_start[i] >= t) throw BadIndex("window mapping out of bounds");
    }
    out.w_terminator = r.u64le();
    if (out.w_terminator >= t || out.w[out.w_terminator] != 0)
        throw BadIndex("terminator window entry invalid");
    return out;
}

}  // namespace ridx
