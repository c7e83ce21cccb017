#include "rindex/suffix.hpp"

#include <cassert>
#include <cstdint>
#include <limits>

namespace ridx {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

void bucket_bounds(const std::vector<std::uint32_t>& s, std::uint32_t k,
                   std::vector<std::uint32_t>& bkt, bool ends) {
    bkt.assign(k, 0);
    for (std::uint32_t c : s) bkt[c]++;
    std::uint32_t sum = 0;
    for (std::uint32_t c = 0; c < k; c++) {
        sum += bkt[c];
        bkt[c] = ends ? sum : sum - bkt[c];
    }
}

void induce_l(const std::vector<std::uint32_t>& s, std::vector<std::uint32_t>& sa,
              const std::vector<bool>& is_s, std::uint32_t k, std::vector<std::uint32_t>& bkt) {
    bucket_bounds(s, k, bkt, false);
    for (std::uint32_t i = 0; i < sa.size(); i++) {
        std::uint32_t j = sa[i];
        if (j != kEmpty && j > 0 && !is_s[j - 1]) sa[bkt[s[j - 1]]++] = j - 1;
    }
}

void induce_s(const std::vector<std::uint32_t>& s, std::vector<std::uint32_t>& sa,
              const std::vector<bool>& is_s, std::uint32_t k, std::vector<std::uint32_t>& bkt) {
    bucket_bounds(s, k, bkt, true);
    for (std::uint32_t i = static_cast<std::uint32_t>(sa.size()); i-- > 0;) {
        std::uint32_t j = sa[i];
        if (j != kEmpty && j > 0 && is_s[j - 1]) sa[--bkt[s[j - 1]]] = j - 1;
    }
}

// induced sorting; s must end with a unique smallest sentinel
void sais(const std::vector<std::uint32_t>& s, std::vector<std::uint32_t>& sa, std::uint32_t k) {
    const std::uint32_t n = static_cast<std::uint32_t>(s.size());
    sa.assign(n, kEmpty);
    if (n == 1) {
        sa[0] = 0;
        return;
    }
    if (n == 2) {
        sa[0] = 1;
        sa[1] = 0;
        return;
    }

    std::vector<bool> is_s(n);
    is_s[n - 1] = true;
    for (std::uint32_t i = n - 1; i-- > 0;)
        is_s[i] = (s[i] < s[i + 1]) || (s[i] == s[i + 1] && is_s[i + 1]);
    auto is_lms = [&](std::uint32_t i) { return i > 0 && is_s[i] && !is_s[i - 1]; };

    std::vector<std::uint32_t> bkt;

    // sort the LMS substrings by one placement + two induce passes
    bucket_bounds(s, k, bkt, true);
    for (std::uint32_t i = 1; i < n; i++)
        if (is_lms(i)) sa[--bkt[s[i]]] = i;
    induce_l(s, sa, is_s, k, bkt);
    induce_s(s, sa, is_s, k, bkt);

    std::uint32_t n1 = 0;
    for (std::uint32_t i = 0; i < n; i++)
        if (sa[i] != kEmpty && is_lms(sa[i])) sa[n1++] = sa[i];

    // name the LMS substrings; equal substrings get equal names
    std::fill(sa.begin() + n1, sa.end(), kEmpty);
    std::uint32_t names = 0;
    std::uint32_t prev = kEmpty;
    for (std::uint32_t i = 0; i < n1; i++) {
        std::uint32_t pos = sa[i];
        bool same = false;
        if (prev != kEmpty) {
            same = true;
            for (std::uint32_t d = 0;; d++) {
                if (prev + d >= n || pos + d >= n || s[prev + d] != s[pos + d]) {
                    same = false;
                    break;
                }
                if (d > 0) {
                    bool ea = is_lms(prev + d), eb = is_lms(pos + d);
                    if (ea || eb) {
                        same = ea && eb;
                        break;
                    }
                }
            }
        }
        if (!same) names++;
        prev = pos;
        sa[n1 + pos / 2] = names - 1;  // LMS positions are ≥ 2 apart, slots are distinct
    }
    std::vector<std::uint32_t> s1;
    s1.reserve(n1);
    for (std::uint32_t i = n1; i < n; i++)
        if (sa[i] != kEmpty) s1.push_back(sa[i]);

    std::vector<std::uint32_t> sa1;
    if (names < n1) {
        sais(s1, sa1, names);
    } else {
        sa1.assign(n1, 0);
        for (std::uint32_t i = 0; i < n1; i++) sa1[s1[i]] = i;
    }

    std::vector<std::uint32_t> lms;
    lms.reserve(n1);
    for (std::uint32_t i = 1; i < n; i++)
        if (is_lms(i)) lms.push_back(i);

    // final pass: place LMS suffixes in sorted order, then induce the rest
    sa.assign(n, kEmpty);
    bucket_bounds(s, k, bkt, true);
    for (std::uint32_t i = n1; i-- > 0;) {
        std::uint32_t j = lms[sa1[i]];
        sa[--bkt[s[j]]] = j;
    }
    induce_l(s, sa, is_s, k, bkt);
    induce_s(s, sa, is_s, k, bkt);
}

}  // namespace

std::vector<std::uint64_t> build_sa(const PreparedText& text) {
    const std::uint64_t n = text.size();
    assert(n >= 1 && n <= std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> s(text.symbols.begin(), text.symbols.end());
    std::vector<std::uint32_t> sa0;
    sais(s, sa0, text.sigma + 1);
    std::vector<std::uint64_t> sa(n);
    for (std::uint64_t p = 0; p < n; p++) sa[p] = sa0[p] + 1;
    assert(sa[0] == n);  // terminator suffix sorts first
    return sa;
}

std::vector<std::uint64_t> build_isa(std::span<const std::uint64_t> sa) {
    std::vector<std::uint64_t> isa(sa.size());
    for (std::uint64_t p = 0; p < sa.size(); p++) isa[sa[p] - 1] = p + 1;
    return isa;
}

std::vector<std::uint64_t> build_lcp(const PreparedText& text, std::span<const std::uint64_t> sa,
                                     std::span<const std::uint64_t> isa) {
    const std::uint64_t n = text.size();
    std::vector<std::uint64_t> lcp(n, 0);
    std::uint64_t h = 0;
    for (std::uint64_t i = 1; i <= n; i++) {
        if (isa[i - 1] == 1) {
            h = 0;
            continue;
        }
        std::uint64_t j = sa[isa[i - 1] - 2];
        while (i + h <= n && j + h <= n && text.symbols[i + h - 1] == text.symbols[j + h - 1]) h++;
        lcp[isa[i - 1] - 1] = h;
        if (h > 0) h--;
    }
    return lcp;
}

std::vector<std::uint16_t> build_bwt(const PreparedText& text, std::span<const std::uint64_t> sa) {
    const std::uint64_t n = text.size();
    std::vector<std::uint16_t> bwt(n);
    for (std::uint64_t p = 1; p <= n; p++)
        bwt[p - 1] = sa[p - 1] > 1 ? text.symbols[sa[p - 1] - 2] : text.symbols[n - 1];
    return bwt;
}

SuffixStructures build_suffix_structures(const PreparedText& text) {
    SuffixStructures out;
    out.sa = build_sa(text);
    out.isa = build_isa(out.sa);
    out.lcp = build_lcp(text, out.sa, out.isa);
    out.bwt = build_bwt(text, out.sa);
    return out;
}

std::vector<std::uint64_t> naive_locate(const PreparedText& text,
                                        std::span<const std::uint8_t> pattern) {
    const std::uint64_t n = text.size();
    std::vector<std::uint64_t> hits;
    if (pattern.empty()) {
        hits.resize(n);
        for (std::uint64_t i = 0; i < n; i++) hits[i] = i + 1;
        return hits;
    }
    std::vector<std::uint16_t> codes;
    codes.reserve(pattern.size());
    for (std::uint8_t b : pattern) {
        if (text.code_of[b] < 0) return hits;
        codes.push_back(static_cast<std::uint16_t>(text.code_of[b]));
    }
    const std::uint64_t m = codes.size();
    if (m > n) return hits;
    for (std::uint64_t i = 1; i + m - 1 <= n; i++) {
        std::uint64_t d = 0;
        while (d < m && text.symbols[i + d - 1] == codes[d]) d++;
        if (d == m) hits.push_back(i);
    }
    return hits;
}

}  // namespace ridx
