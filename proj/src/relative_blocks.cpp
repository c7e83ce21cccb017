/* relative_blocks.cpp — copy-structure build, descent, and serialization */

#include "rindex/relative_blocks.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "rindex/errors.hpp"

namespace ridx {

namespace {

constexpr std::uint64_t kHashMod = (std::uint64_t{1} << 61) - 1;
constexpr std::uint64_t kHashMul = 0x2545F4914F6CDD1Dull % kHashMod;

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;  // both < 2^61, no overflow
    return s >= kHashMod ? s - kHashMod : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b) {
    return a >= b ? a - b : a + kHashMod - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
    __uint128_t p = static_cast<__uint128_t>(a) * b;
    std::uint64_t s = static_cast<std::uint64_t>(p & kHashMod) + static_cast<std::uint64_t>(p >> 61);
    s = (s & kHashMod) + (s >> 61);
    return s >= kHashMod ? s - kHashMod : s;
}

std::uint64_t enc_cell(std::int64_t v) {
    // zigzag then shift into [1..kHashMod-1] so runs of zeros still mix
    auto z = static_cast<std::uint64_t>((v << 1) ^ (v >> 63));
    return z % (kHashMod - 1) + 1;
}

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
    assert(b > 0);
    return (a + b - 1) / b;
}

std::uint32_t ceil_log2(std::uint64_t x) {
    std::uint32_t b = 0;
    while ((std::uint64_t{1} << b) < x) b++;
    return b;
}

// rolling hash over cell contents, used only to filter copy candidates;
// every hash hit is confirmed by an exact comparison
struct ContentHash {
    std::vector<std::uint64_t> pre;  // pre[i] = hash of cells[1..i]
    std::vector<std::uint64_t> pw;   // pw[i] = multiplier^i

    explicit ContentHash(const std::vector<std::int64_t>& cells) {
        pre.resize(cells.size() + 1, 0);
        pw.resize(cells.size() + 1, 1);
        for (std::size_t i = 0; i < cells.size(); i++) {
            pre[i + 1] = mod_add(mod_mul(pre[i], kHashMul), enc_cell(cells[i]));
            pw[i + 1] = mod_mul(pw[i], kHashMul);
        }
    }

    std::uint64_t get(std::uint64_t lo, std::uint64_t hi) const {  // 1-based inclusive
        return mod_sub(pre[hi], mod_mul(pre[lo - 1], pw[hi - lo + 1]));
    }
};

// per-domain view: cells[i-1] is the stored value at position i, ps(p) the
// absolute value the first p cells sum to (diff domains only)
struct DomainRef {
    std::vector<std::int64_t> cells;
    const std::vector<std::uint64_t>* prefix = nullptr;

    std::int64_t ps(std::uint64_t p) const {
        if (prefix == nullptr) return 0;
        return p == 0 ? 0 : static_cast<std::int64_t>((*prefix)[p - 1]);
    }
};

DomainRef make_domain_ref(BlockDomain domain, const PreparedText& text, const SuffixStructures& st) {
    std::uint64_t n = text.size();
    DomainRef ref;
    ref.cells.resize(n);
    switch (domain) {
        case BlockDomain::Text:
            for (std::uint64_t i = 0; i < n; i++) ref.cells[i] = text.symbols[i];
            break;
        case BlockDomain::DiffSa:
            ref.cells[0] = static_cast<std::int64_t>(st.sa[0]);
            for (std::uint64_t p = 1; p < n; p++)
                ref.cells[p] = static_cast<std::int64_t>(st.sa[p]) - static_cast<std::int64_t>(st.sa[p - 1]);
            ref.prefix = &st.sa;
            break;
        case BlockDomain::DiffIsa:
            ref.cells[0] = static_cast<std::int64_t>(st.isa[0]);
            for (std::uint64_t i = 1; i < n; i++)
                ref.cells[i] = static_cast<std::int64_t>(st.isa[i]) - static_cast<std::int64_t>(st.isa[i - 1]);
            ref.prefix = &st.isa;
            break;
    }
    return ref;
}

std::vector<std::uint64_t> make_anchors(BlockDomain domain, const SuffixStructures& st) {
    std::uint64_t n = st.bwt.size();
    std::vector<std::uint64_t> anchors;
    for (std::uint64_t q = 1; q <= n; q++) {
        if (q > 1 && st.bwt[q - 1] == st.bwt[q - 2]) continue;  // not a run start
        anchors.push_back(domain == BlockDomain::DiffSa ? q : st.sa[q - 1]);
    }
    if (domain != BlockDomain::DiffSa) std::sort(anchors.begin(), anchors.end());
    return anchors;
}

}  // namespace

std::int64_t RelativeBlocks::area_origin(std::uint32_t anchor_id, std::uint64_t level) const {
    auto a = static_cast<std::int64_t>(anchors_[anchor_id]);
    auto s = static_cast<std::int64_t>(s_levels_[level - 1]);
    // text areas surround the anchor symmetrically; differenced areas shift
    // right by one so the cell holding the jump across the anchor is included
    return domain_ == BlockDomain::Text ? a - s : a - s + 1;
}

std::uint64_t RelativeBlocks::half_step(std::uint64_t level) const {
    return ceil_div(s_levels_[level], 2);  // half the next level's area half-width
}

std::uint64_t RelativeBlocks::half_count(std::uint64_t level) const {
    return ceil_div(2 * s_levels_[level - 1], half_step(level));
}

std::uint64_t RelativeBlocks::block_end(std::uint64_t pos) const {
    std::uint64_t hi = ((pos - 1) / top_width_ + 1) * top_width_;
    return std::min(hi, n_);
}

RelativeBlocks RelativeBlocks::build(BlockDomain domain, const PreparedText& text,
                                     const SuffixStructures& st, std::uint32_t leaf_width) {
    std::uint64_t n = text.size();
    assert(n >= 1 && st.sa.size() == n && st.bwt.size() == n);
    RelativeBlocks rb;
    rb.domain_ = domain;
    rb.n_ = n;
    rb.alpha_map_ = AlphabetMap::from_text(text);
    rb.anchors_ = make_anchors(domain, st);
    std::uint64_t r = rb.anchors_.size();
    rb.top_width_ = ceil_div(n, r);
    rb.leaf_width_ = leaf_width != 0 ? leaf_width
                                     : std::max<std::uint32_t>(4, ceil_log2(rb.top_width_));
    DomainRef ref = make_domain_ref(domain, text, st);

    if (rb.top_width_ < 4 * std::uint64_t{rb.leaf_width_}) {
        // blocks would bottom out immediately; store the absolute values outright
        rb.degenerate_ = true;
        rb.explicit_values_.resize(n);
        for (std::uint64_t i = 1; i <= n; i++)
            rb.explicit_values_[i - 1] = domain == BlockDomain::Text ? ref.cells[i - 1] : ref.ps(i);
        return rb;
    }

    rb.s_levels_.push_back(rb.top_width_);
    while (rb.s_levels_.back() >= 4 * std::uint64_t{rb.leaf_width_})
        rb.s_levels_.push_back(ceil_div(rb.s_levels_.back(), 2));
    std::uint64_t lstar = rb.s_levels_.size();
    assert(lstar >= 2);

    ContentHash hash(ref.cells);
    bool is_text = domain == BlockDomain::Text;

    auto cells_equal = [&](std::uint64_t lo, std::uint64_t j, std::uint64_t w) {
        return std::equal(ref.cells.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                          ref.cells.begin() + static_cast<std::ptrdiff_t>(lo - 1 + w),
                          ref.cells.begin() + static_cast<std::ptrdiff_t>(j - 1));
    };

    // leftmost copy of cells[lo..hi] whose qualifying window holds an anchor;
    // returns the copy start and the leftmost such anchor
    auto find_copy = [&](std::uint64_t lo, std::uint64_t hi) -> std::pair<std::uint64_t, std::uint32_t> {
        std::uint64_t w = hi - lo + 1;
        std::uint64_t target = hash.get(lo, hi);
        std::uint64_t next = 1;  // lowest start not yet tried
        for (std::uint64_t aid = 0; aid < r; aid++) {
            auto a = static_cast<std::int64_t>(rb.anchors_[aid]);
            auto wpos = static_cast<std::int64_t>(w);
            std::int64_t clo = is_text ? a - wpos : a - wpos + 1;
            std::int64_t chi = is_text ? a : a + 1;
            clo = std::max<std::int64_t>(clo, 1);
            chi = std::min<std::int64_t>(chi, static_cast<std::int64_t>(n - w + 1));
            for (auto j = std::max<std::int64_t>(clo, static_cast<std::int64_t>(next)); j <= chi; j++) {
                auto ju = static_cast<std::uint64_t>(j);
                if (hash.get(ju, ju + w - 1) != target || !cells_equal(lo, ju, w)) continue;
                std::uint64_t win_lo = is_text ? ju : ju - 1;  // window = copy extended by one cell
                auto it = std::lower_bound(rb.anchors_.begin(), rb.anchors_.end(), win_lo);
                assert(it != rb.anchors_.end());
                return {ju, static_cast<std::uint32_t>(it - rb.anchors_.begin())};
            }
            if (chi >= static_cast<std::int64_t>(next)) next = static_cast<std::uint64_t>(chi) + 1;
        }
        throw std::logic_error("block copy search failed at [" + std::to_string(lo) + ".." +
                               std::to_string(hi) + "]");
    };

    auto correction = [&](std::uint64_t lo, std::uint64_t j) {
        return is_text ? 0 : ref.ps(lo - 1) - ref.ps(j - 1);
    };

    // level 0: fixed partition of [1..n]
    std::uint64_t blocks = ceil_div(n, rb.top_width_);
    rb.level0_.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; b++) {
        std::uint64_t lo = b * rb.top_width_ + 1;
        std::uint64_t hi = std::min(n, lo + rb.top_width_ - 1);
        auto [j, aid] = find_copy(lo, hi);
        std::int64_t org = rb.area_origin(aid, 1);
        assert(static_cast<std::int64_t>(j) >= org);
        assert(static_cast<std::int64_t>(j + (hi - lo)) <= org + 2 * static_cast<std::int64_t>(rb.s_levels_[0]) - 1);
        rb.level0_.push_back(Pointer{aid, static_cast<std::uint64_t>(static_cast<std::int64_t>(j) - org),
                                     correction(lo, j)});
    }

    // levels 1..l*-1: overlapping half-blocks around every anchor
    rb.levels_.resize(lstar - 1);
    for (std::uint64_t l = 1; l < lstar; l++) {
        std::uint64_t width = rb.s_levels_[l];  // content width = next level's half-width
        std::uint64_t step = rb.half_step(l);
        std::uint64_t per = rb.half_count(l);
        auto& table = rb.levels_[l - 1];
        table.reserve(r * per);
        for (std::uint32_t aid = 0; aid < r; aid++) {
            std::int64_t org = rb.area_origin(aid, l);
            for (std::uint64_t k = 0; k < per; k++) {
                std::int64_t span_lo = org + static_cast<std::int64_t>(k * step);
                std::int64_t span_hi = span_lo + static_cast<std::int64_t>(width) - 1;
                HalfBlock hb;
                if (span_lo < 1 || span_hi > static_cast<std::int64_t>(n)) {
                    // sticks out of the array; keep the in-range cells verbatim
                    hb.is_explicit = true;
                    std::int64_t clo = std::max<std::int64_t>(span_lo, 1);
                    std::int64_t chi = std::min<std::int64_t>(span_hi, static_cast<std::int64_t>(n));
                    if (clo <= chi) {
                        hb.cells.assign(ref.cells.begin() + (clo - 1), ref.cells.begin() + chi);
                        hb.abs_base = ref.ps(static_cast<std::uint64_t>(clo) - 1);
                    }
                } else {
                    auto lo = static_cast<std::uint64_t>(span_lo);
                    auto [j, taid] = find_copy(lo, static_cast<std::uint64_t>(span_hi));
                    std::int64_t torg = rb.area_origin(taid, l + 1);
                    assert(static_cast<std::int64_t>(j) >= torg);
                    assert(static_cast<std::int64_t>(j + width - 1) <=
                           torg + 2 * static_cast<std::int64_t>(rb.s_levels_[l]) - 1);
                    hb.ptr = Pointer{taid, static_cast<std::uint64_t>(static_cast<std::int64_t>(j) - torg),
                                     correction(lo, j)};
                }
                table.push_back(std::move(hb));
            }
        }
    }

    // leaf level: verbatim areas
    rb.leaves_.resize(r);
    for (std::uint32_t aid = 0; aid < r; aid++) {
        std::int64_t org = rb.area_origin(aid, lstar);
        std::int64_t clo = std::max<std::int64_t>(org, 1);
        std::int64_t chi = std::min(org + 2 * static_cast<std::int64_t>(rb.s_levels_[lstar - 1]) - 1,
                                    static_cast<std::int64_t>(n));
        assert(clo <= chi);
        rb.leaves_[aid].cells.assign(ref.cells.begin() + (clo - 1), ref.cells.begin() + chi);
        rb.leaves_[aid].abs_base = ref.ps(static_cast<std::uint64_t>(clo) - 1);
    }
    return rb;
}

void RelativeBlocks::read_chunk(std::uint64_t x, std::uint64_t len, std::int64_t* out) const {
    assert(len >= 1 && x >= 1 && x + len - 1 <= n_);
    if (degenerate_) {
        for (std::uint64_t i = 0; i < len; i++) out[i] = explicit_values_[x - 1 + i];
        return;
    }
    assert(x + len - 1 <= block_end(x));

    auto emit = [&](const std::vector<std::int64_t>& cells, std::int64_t clamped_lo,
                    std::int64_t abs_base, std::int64_t corr, std::uint64_t cur) {
        auto idx = static_cast<std::uint64_t>(static_cast<std::int64_t>(cur) - clamped_lo);
        assert(idx + len <= cells.size());
        if (domain_ == BlockDomain::Text) {
            for (std::uint64_t i = 0; i < len; i++) out[i] = cells[idx + i];
            return;
        }
        std::int64_t run = corr + abs_base;
        for (std::uint64_t i = 0; i < idx; i++) run += cells[i];
        for (std::uint64_t i = 0; i < len; i++) {
            run += cells[idx + i];
            out[i] = run;
        }
    };

    std::uint64_t b = (x - 1) / top_width_;
    const Pointer& p0 = level0_[b];
    std::int64_t corr = p0.correction;
    std::uint32_t aid = p0.anchor_id;
    std::uint64_t cur = static_cast<std::uint64_t>(area_origin(aid, 1) + static_cast<std::int64_t>(p0.offset)) +
                        (x - (b * top_width_ + 1));
    std::uint64_t lstar = s_levels_.size();
    for (std::uint64_t l = 1; l < lstar; l++) {
        std::int64_t org = area_origin(aid, l);
        auto o = static_cast<std::uint64_t>(static_cast<std::int64_t>(cur) - org);
        std::uint64_t per = half_count(l);
        std::uint64_t k = std::min(per - 1, o / half_step(l));
        const HalfBlock& hb = levels_[l - 1][aid * per + k];
        std::int64_t span_lo = org + static_cast<std::int64_t>(k * half_step(l));
        if (hb.is_explicit) {
            emit(hb.cells, std::max<std::int64_t>(span_lo, 1), hb.abs_base, corr, cur);
            return;
        }
        corr += hb.ptr.correction;
        std::int64_t torg = area_origin(hb.ptr.anchor_id, l + 1);
        cur = static_cast<std::uint64_t>(torg + static_cast<std::int64_t>(hb.ptr.offset)) +
              (cur - static_cast<std::uint64_t>(span_lo));
        aid = hb.ptr.anchor_id;
    }
    const Leaf& leaf = leaves_[aid];
    emit(leaf.cells, std::max<std::int64_t>(area_origin(aid, lstar), 1), leaf.abs_base, corr, cur);
}

std::vector<std::int64_t> RelativeBlocks::values(std::uint64_t x, std::uint64_t len) const {
    std::vector<std::int64_t> out(len);
    std::uint64_t pos = x, done = 0;
    while (done < len) {
        std::uint64_t take = std::min<std::uint64_t>(leaf_width_, len - done);
        if (!degenerate_) take = std::min(take, block_end(pos) - pos + 1);
        read_chunk(pos, take, out.data() + done);
        pos += take;
        done += take;
    }
    return out;
}

std::vector<std::uint8_t> RelativeBlocks::extract(std::uint64_t i, std::uint64_t len) const {
    if (domain_ != BlockDomain::Text) throw std::logic_error("extract requires the text blocks");
    if (i < 1 || i > n_) throw OutOfRange("extract start " + std::to_string(i) + " not in [1.." +
                                          std::to_string(n_) + "]");
    if (len == 0) return {};
    if (i + len - 1 > n_ - 1)
        throw OutOfRange("extract range [" + std::to_string(i) + ".." + std::to_string(i + len - 1) +
                         "] leaves [1.." + std::to_string(n_ - 1) + "]");
    std::vector<std::int64_t> vals = values(i, len);
    std::vector<std::uint8_t> bytes(len);
    for (std::uint64_t j = 0; j < len; j++) {
        assert(vals[j] >= 2 && vals[j] <= alpha_map_.sigma);
        bytes[j] = static_cast<std::uint8_t>(alpha_map_.byte_of[static_cast<std::size_t>(vals[j])]);
    }
    return bytes;
}

std::vector<std::uint64_t> RelativeBlocks::sa_range(std::uint64_t p, std::uint64_t len) const {
    if (domain_ != BlockDomain::DiffSa) throw std::logic_error("sa_range requires the suffix-array blocks");
    if (p < 1 || p > n_) throw OutOfRange("row " + std::to_string(p) + " not in [1.." + std::to_string(n_) + "]");
    if (len == 0) return {};
    if (p + len - 1 > n_)
        throw OutOfRange("row range [" + std::to_string(p) + ".." + std::to_string(p + len - 1) +
                         "] leaves [1.." + std::to_string(n_) + "]");
    std::vector<std::int64_t> vals = values(p, len);
    std::vector<std::uint64_t> out(len);
    for (std::uint64_t j = 0; j < len; j++) {
        assert(vals[j] >= 1 && vals[j] <= static_cast<std::int64_t>(n_));
        out[j] = static_cast<std::uint64_t>(vals[j]);
    }
    return out;
}

std::vector<std::uint64_t> RelativeBlocks::isa_range(std::uint64_t i, std::uint64_t len) const {
    if (domain_ != BlockDomain::DiffIsa) throw std::logic_error("isa_range requires the inverse blocks");
    if (i < 1 || i > n_) throw OutOfRange("position " + std::to_string(i) + " not in [1.." +
                                          std::to_string(n_) + "]");
    if (len == 0) return {};
    if (i + len - 1 > n_)
        throw OutOfRange("position range [" + std::to_string(i) + ".." + std::to_string(i + len - 1) +
                         "] leaves [1.." + std::to_string(n_) + "]");
    std::vector<std::int64_t> vals = values(i, len);
    std::vector<std::uint64_t> out(len);
    for (std::uint64_t j = 0; j < len; j++) {
        assert(vals[j] >= 1 && vals[j] <= static_cast<std::int64_t>(n_));
        out[j] = static_cast<std::uint64_t>(vals[j]);
    }
    return out;
}

std::uint64_t RelativeBlocks::leaf_cell_count() const {
    if (degenerate_) return explicit_values_.size();
    std::uint64_t total = 0;
    for (const Leaf& leaf : leaves_) total += leaf.cells.size();
    return total;
}

std::uint64_t RelativeBlocks::boundary_cell_count() const {
    std::uint64_t total = 0;
    for (const auto& table : levels_)
        for (const HalfBlock& hb : table)
            if (hb.is_explicit) total += hb.cells.size();
    return total;
}

std::uint64_t RelativeBlocks::pointer_count() const {
    std::uint64_t total = level0_.size();
    for (const auto& table : levels_)
        for (const HalfBlock& hb : table)
            if (!hb.is_explicit) total++;
    return total;
}

void RelativeBlocks::validate(const PreparedText& text, const SuffixStructures& st) const {
    auto req = [](bool ok, const std::string& what) {
        if (!ok) throw std::logic_error("block invariant violated: " + what);
    };
    std::uint64_t n = text.size();
    req(n == n_, "size mismatch");
    DomainRef ref = make_domain_ref(domain_, text, st);
    req(anchors_ == make_anchors(domain_, st), "anchor set");
    std::uint64_t r = anchors_.size();
    req(top_width_ == ceil_div(n, r), "top block width");
    bool is_text = domain_ == BlockDomain::Text;

    if (degenerate_) {
        req(top_width_ < 4 * std::uint64_t{leaf_width_}, "degenerate criterion");
        req(explicit_values_.size() == n, "explicit cell count");
        for (std::uint64_t i = 1; i <= n; i++)
            req(explicit_values_[i - 1] == (is_text ? ref.cells[i - 1] : ref.ps(i)), "explicit cell value");
        return;
    }

    req(top_width_ >= 4 * std::uint64_t{leaf_width_}, "level chain start");
    req(!s_levels_.empty() && s_levels_[0] == top_width_, "level widths");
    std::uint64_t lstar = s_levels_.size();
    for (std::uint64_t l = 1; l < lstar; l++) {
        req(s_levels_[l - 1] >= 4 * std::uint64_t{leaf_width_}, "inner level too narrow");
        req(s_levels_[l] == ceil_div(s_levels_[l - 1], 2), "width halving");
    }
    req(s_levels_[lstar - 1] < 4 * std::uint64_t{leaf_width_}, "leaf level too wide");

    // anchor in the qualifying window, content equality, target containment
    auto check_pointer = [&](const Pointer& ptr, std::uint64_t lo, std::uint64_t w,
                             std::uint64_t target_level) {
        req(ptr.anchor_id < r, "pointer anchor id");
        std::int64_t torg = area_origin(ptr.anchor_id, target_level);
        std::int64_t j = torg + static_cast<std::int64_t>(ptr.offset);
        req(j >= 1 && j + static_cast<std::int64_t>(w) - 1 <= static_cast<std::int64_t>(n), "copy in range");
        req(j + static_cast<std::int64_t>(w) - 1 <=
                torg + 2 * static_cast<std::int64_t>(s_levels_[target_level - 1]) - 1,
            "copy inside target area");
        auto ju = static_cast<std::uint64_t>(j);
        std::uint64_t win_lo = is_text ? ju : ju - 1;
        std::uint64_t win_hi = is_text ? ju + w : ju + w - 1;
        std::uint64_t a = anchors_[ptr.anchor_id];
        req(a >= win_lo && a <= win_hi, "anchor outside window");
        req(std::equal(ref.cells.begin() + static_cast<std::ptrdiff_t>(lo - 1),
                       ref.cells.begin() + static_cast<std::ptrdiff_t>(lo - 1 + w),
                       ref.cells.begin() + (j - 1)),
            "copy content");
        req(ptr.correction == (is_text ? 0 : ref.ps(lo - 1) - ref.ps(ju - 1)), "pointer correction");
    };

    req(level0_.size() == ceil_div(n, top_width_), "top block count");
    for (std::uint64_t b = 0; b < level0_.size(); b++) {
        std::uint64_t lo = b * top_width_ + 1;
        std::uint64_t hi = std::min(n, lo + top_width_ - 1);
        check_pointer(level0_[b], lo, hi - lo + 1, 1);
    }

    req(levels_.size() == lstar - 1, "half-block level count");
    for (std::uint64_t l = 1; l < lstar; l++) {
        std::uint64_t width = s_levels_[l];
        std::uint64_t step = half_step(l);
        std::uint64_t per = half_count(l);
        req(levels_[l - 1].size() == r * per, "half-block count");
        for (std::uint32_t aid = 0; aid < r; aid++) {
            std::int64_t org = area_origin(aid, l);
            for (std::uint64_t k = 0; k < per; k++) {
                const HalfBlock& hb = levels_[l - 1][aid * per + k];
                std::int64_t span_lo = org + static_cast<std::int64_t>(k * step);
                std::int64_t span_hi = span_lo + static_cast<std::int64_t>(width) - 1;
                bool sticks_out = span_lo < 1 || span_hi > static_cast<std::int64_t>(n);
                req(hb.is_explicit == sticks_out, "explicit exactly at the boundary");
                if (!sticks_out) {
                    check_pointer(hb.ptr, static_cast<std::uint64_t>(span_lo), width, l + 1);
                    continue;
                }
                std::int64_t clo = std::max<std::int64_t>(span_lo, 1);
                std::int64_t chi = std::min<std::int64_t>(span_hi, static_cast<std::int64_t>(n));
                std::uint64_t cnt = clo <= chi ? static_cast<std::uint64_t>(chi - clo + 1) : 0;
                req(hb.cells.size() == cnt, "boundary cell count");
                for (std::uint64_t i = 0; i < cnt; i++)
                    req(hb.cells[i] == ref.cells[static_cast<std::uint64_t>(clo) - 1 + i], "boundary cell");
                if (cnt > 0)
                    req(hb.abs_base == ref.ps(static_cast<std::uint64_t>(clo) - 1), "boundary base");
            }
        }
    }

    req(leaves_.size() == r, "leaf count");
    for (std::uint32_t aid = 0; aid < r; aid++) {
        std::int64_t org = area_origin(aid, lstar);
        std::int64_t clo = std::max<std::int64_t>(org, 1);
        std::int64_t chi = std::min(org + 2 * static_cast<std::int64_t>(s_levels_[lstar - 1]) - 1,
                                    static_cast<std::int64_t>(n));
        auto cnt = static_cast<std::uint64_t>(chi - clo + 1);
        req(leaves_[aid].cells.size() == cnt, "leaf cell count");
        for (std::uint64_t i = 0; i < cnt; i++)
            req(leaves_[aid].cells[i] == ref.cells[static_cast<std::uint64_t>(clo) - 1 + i], "leaf cell");
        req(leaves_[aid].abs_base == ref.ps(static_cast<std::uint64_t>(clo) - 1), "leaf base");
    }
}

void RelativeBlocks::serialize(ByteWriter& w) const {
    w.u8(static_cast<std::uint8_t>(domain_));
    w.u64le(n_);
    w.u32le(leaf_width_);
    w.u8(degenerate_ ? 1 : 0);
    alpha_map_.serialize(w);
    w.varint(anchors_.size());
    std::uint64_t prev = 0;
    for (std::uint64_t a : anchors_) {
        w.varint(a - prev);
        prev = a;
    }
    if (degenerate_) {
        for (std::int64_t v : explicit_values_) w.svarint(v);
        return;
    }
    w.varint(s_levels_.size());
    auto pointer = [&](const Pointer& p) {
        w.varint(p.anchor_id);
        w.varint(p.offset);
        w.svarint(p.correction);
    };
    for (const Pointer& p : level0_) pointer(p);
    for (const auto& table : levels_) {
        for (const HalfBlock& hb : table) {
            w.u8(hb.is_explicit ? 1 : 0);
            if (!hb.is_explicit) {
                pointer(hb.ptr);
                continue;
            }
            w.svarint(hb.abs_base);
            for (std::int64_t c : hb.cells) w.svarint(c);
        }
    }
    for (const Leaf& leaf : leaves_) {
        w.svarint(leaf.abs_base);
        for (std::int64_t c : leaf.cells) w.svarint(c);
    }
}

RelativeBlocks RelativeBlocks::deserialize(ByteReader& r) {
    RelativeBlocks rb;
    std::uint8_t dom = r.u8();
    if (dom > 2) throw BadIndex("unknown block domain " + std::to_string(dom));
    rb.domain_ = static_cast<BlockDomain>(dom);
    rb.n_ = r.u64le();
    if (rb.n_ == 0) throw BadIndex("empty block structure");
    rb.leaf_width_ = r.u32le();
    if (rb.leaf_width_ == 0) throw BadIndex("zero leaf width");
    std::uint8_t degen = r.u8();
    if (degen > 1) throw BadIndex("bad degenerate flag");
    rb.degenerate_ = degen == 1;
    rb.alpha_map_ = AlphabetMap::deserialize(r);
    std::uint64_t count = r.varint();
    if (count == 0 || count > rb.n_) throw BadIndex("bad anchor count");
    rb.anchors_.resize(count);
    std::uint64_t prev = 0;
    for (std::uint64_t i = 0; i < count; i++) {
        std::uint64_t d = r.varint();
        if (d == 0 || prev + d > rb.n_) throw BadIndex("anchors not ascending in range");
        prev += d;
        rb.anchors_[i] = prev;
    }
    std::uint64_t n = rb.n_;
    std::uint64_t rr = count;
    rb.top_width_ = (n + rr - 1) / rr;
    bool degenerate_expected = rb.top_width_ < 4 * std::uint64_t{rb.leaf_width_};
    if (rb.degenerate_ != degenerate_expected) throw BadIndex("degenerate flag mismatch");
    if (rb.degenerate_) {
        rb.explicit_values_.resize(n);
        for (std::uint64_t i = 0; i < n; i++) rb.explicit_values_[i] = r.svarint();
        return rb;
    }
    std::uint64_t lstar = r.varint();
    std::vector<std::uint64_t> expected{rb.top_width_};
    while (expected.back() >= 4 * std::uint64_t{rb.leaf_width_})
        expected.push_back((expected.back() + 1) / 2);
    if (lstar != expected.size()) throw BadIndex("level count mismatch");
    rb.s_levels_ = std::move(expected);

    auto pointer = [&](std::uint64_t w, std::uint64_t target_level) {
        Pointer p;
        std::uint64_t aid = r.varint();
        if (aid >= rr) throw BadIndex("pointer anchor out of range");
        p.anchor_id = static_cast<std::uint32_t>(aid);
        p.offset = r.varint();
        p.correction = r.svarint();
        std::int64_t torg = rb.area_origin(p.anchor_id, target_level);
        std::int64_t j = torg + static_cast<std::int64_t>(p.offset);
        std::int64_t end = j + static_cast<std::int64_t>(w) - 1;
        if (j < 1 || end > static_cast<std::int64_t>(n) ||
            end > torg + 2 * static_cast<std::int64_t>(rb.s_levels_[target_level - 1]) - 1)
            throw BadIndex("pointer target out of area");
        return p;
    };

    std::uint64_t blocks = (n + rb.top_width_ - 1) / rb.top_width_;
    rb.level0_.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; b++) {
        std::uint64_t lo = b * rb.top_width_ + 1;
        std::uint64_t hi = std::min(n, lo + rb.top_width_ - 1);
        rb.level0_.push_back(pointer(hi - lo + 1, 1));
    }
    rb.levels_.resize(lstar - 1);
    for (std::uint64_t l = 1; l < lstar; l++) {
        std::uint64_t width = rb.s_levels_[l];
        std::uint64_t step = rb.half_step(l);
        std::uint64_t per = rb.half_count(l);
        auto& table = rb.levels_[l - 1];
        table.reserve(rr * per);
        for (std::uint32_t aid = 0; aid < rr; aid++) {
            std::int64_t org = rb.area_origin(aid, l);
            for (std::uint64_t k = 0; k < per; k++) {
                std::int64_t span_lo = org + static_cast<std::int64_t>(k * step);
                std::int64_t span_hi = span_lo + static_cast<std::int64_t>(width) - 1;
                bool sticks_out = span_lo < 1 || span_hi > static_cast<std::int64_t>(n);
                std::uint8_t flag = r.u8();
                if (flag > 1) throw BadIndex("bad half-block flag");
                if ((flag == 1) != sticks_out) throw BadIndex("half-block kind mismatch");
                HalfBlock hb;
                hb.is_explicit = sticks_out;
                if (!sticks_out) {
                    hb.ptr = pointer(width, l + 1);
                } else {
                    std::int64_t clo = std::max<std::int64_t>(span_lo, 1);
                    std::int64_t chi = std::min<std::int64_t>(span_hi, static_cast<std::int64_t>(n));
                    std::uint64_t cnt = clo <= chi ? static_cast<std::uint64_t>(chi - clo + 1) : 0;
                    hb.abs_base = r.svarint();
                    hb.cells.resize(cnt);
                    for (std::uint64_t i = 0; i < cnt; i++) hb.cells[i] = r.svarint();
                }
                table.push_back(std::move(hb));
            }
        }
    }
    rb.leaves_.resize(rr);
    for (std::uint32_t aid = 0; aid < rr; aid++) {
        std::int64_t org = rb.area_origin(aid, lstar);
        std::int64_t clo = std::max<std::int64_t>(org, 1);
        std::int64_t chi = std::min(org + 2 * static_cast<std::int64_t>(rb.s_levels_[lstar - 1]) - 1,
                                    static_cast<std::int64_t>(n));
        if (clo > chi) throw BadIndex("empty leaf area");
        auto cnt = static_cast<std::uint64_t>(chi - clo + 1);
        rb.leaves_[aid].abs_base = r.svarint();
        rb.leaves_[aid].cells.resize(cnt);
        for (std::uint64_t i = 0; i < cnt; i++) rb.leaves_[aid].cells[i] = r.svarint();
    }
    return rb;
}

std::vector<std::uint64_t> lcp_range(const RelativeBlocks& sa_blocks, const LocateIndex& loc,
                                     std::uint64_t p, std::uint64_t len) {
    std::uint64_t n = loc.size();
    if (p < 1 || p > n) throw OutOfRange("row " + std::to_string(p) + " not in [1.." + std::to_string(n) + "]");
    if (len == 0) return {};
    if (p + len - 1 > n)
        throw OutOfRange("row range [" + std::to_string(p) + ".." + std::to_string(p + len - 1) +
                         "] leaves [1.." + std::to_string(n) + "]");
    const WindowTables& wt = loc.windows();  // throws when windows are absent
    std::vector<std::uint64_t> out;
    out.reserve(len);
    std::uint64_t pos = p;
    while (true) {
        // one backward probe covers LCP[pos]; a forward window covers the rest
        std::uint64_t v = sa_blocks.sa_at(pos);
        if (pos == 1) {
            out.push_back(0);
        } else {
            std::vector<std::uint64_t> one = loc.plcp_window(v, Direction::Backward, 1);
            assert(one.size() == 1);
            out.push_back(one[0]);
        }
        if (out.size() == len) break;
        std::uint64_t take = std::min<std::uint64_t>(len - out.size(), wt.s);
        std::vector<std::uint64_t> fwd = loc.plcp_window(v, Direction::Forward, take);
        assert(fwd.size() == take);
        out.insert(out.end(), fwd.begin(), fwd.end());
        if (out.size() == len) break;
        pos += take + 1;
    }
    assert(out.size() == len);
    return out;
}

}  // namespace ridx
