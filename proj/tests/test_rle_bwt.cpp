/* test_rle_bwt.cpp — run-length BWT: runs, rank, LF, backward steps */

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rindex/rle_bwt.hpp"
#include "rindex/suffix.hpp"
#include "test_util.hpp"

using namespace ridx;
using testutil::prep;

namespace {

RunLengthBWT make(const PreparedText& t, const SuffixStructures& st) {
    return RunLengthBWT::from_bwt(st.bwt, t.sigma);
}

void check_against_bwt(const RunLengthBWT& rb, const std::vector<std::uint16_t>& bwt,
                       std::uint32_t sigma) {
    const std::uint64_t n = bwt.size();
    REQUIRE(rb.size() == n);
    for (std::uint64_t p = 1; p <= n; p++) CHECK(rb.access(p) == bwt[p - 1]);
    for (std::uint16_t c = 1; c <= sigma; c++) {
        std::uint64_t seen = 0;
        CHECK(rb.rank(c, 0) == 0);
        for (std::uint64_t p = 1; p <= n; p++) {
            if (bwt[p - 1] == c) seen++;
            CHECK(rb.rank(c, p) == seen);
        }
    }
    // run geometry partitions [1..n] into maximal equal-symbol pieces
    std::uint64_t runs = 0;
    for (std::uint64_t p = 1; p <= n; p++)
        if (p == 1 || bwt[p - 1] != bwt[p - 2]) runs++;
    CHECK(rb.run_count() == runs);
    for (std::uint64_t k = 1; k <= runs; k++) {
        std::uint64_t a = rb.run_start(k), b = rb.run_end(k);
        CHECK(a <= b);
        for (std::uint64_t p = a; p <= b; p++) {
            CHECK(bwt[p - 1] == rb.run_symbol(k));
            CHECK(rb.run_of(p) == k);
        }
    }
}

}  // namespace

TEST_CASE("mississippi runs and ranks") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    RunLengthBWT rb = make(t, st);
    CHECK(rb.run_count() == 9);
    CHECK(rb.sigma() == 5);
    check_against_bwt(rb, st.bwt, t.sigma);
    // C[c]: 0 of code <1, 1 of code <2 (terminator), +4 i, +1 m, +2 p
    CHECK(rb.smaller_symbol_count(1) == 0);
    CHECK(rb.smaller_symbol_count(2) == 1);
    CHECK(rb.smaller_symbol_count(3) == 5);
    CHECK(rb.smaller_symbol_count(4) == 6);
    CHECK(rb.smaller_symbol_count(5) == 8);
}

TEST_CASE("LF walks the text right to left") {
    for (const char* s : {"mississippi", "aaaa", "aba", "abracadabra", ""}) {
        PreparedText t = prep(s);
        SuffixStructures st = build_suffix_structures(t);
        RunLengthBWT rb = make(t, st);
        for (std::uint64_t p = 1; p <= t.size(); p++) {
            std::uint64_t expect = st.sa[p - 1] == 1 ? t.size() : st.sa[p - 1] - 1;
            CHECK(st.sa[rb.lf(p) - 1] == expect);
        }
    }
}

TEST_CASE("one backward step from the full range finds each symbol's rows") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    RunLengthBWT rb = make(t, st);
    Range full{1, t.size()};
    for (std::uint16_t c = 1; c <= t.sigma; c++) {
        std::uint64_t sp = 0, ep = 0;
        for (std::uint64_t p = 1; p <= t.size(); p++)
            if (t.symbols[st.sa[p - 1] - 1] == c) {
                if (sp == 0) sp = p;
                ep = p;
            }
        auto stepped = rb.backward_step(c, full);
        REQUIRE(stepped.has_value());
        CHECK(stepped->sp == sp);
        CHECK(stepped->ep == ep);
    }
    // narrowing to nothing: no occurrence of "sm"
    auto sm = rb.backward_step(5, Range{6, 6});  // row of "mississippi$", prepend s
    CHECK(!sm.has_value());
}

TEST_CASE("previous run of a symbol") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    RunLengthBWT rb = make(t, st);
    for (std::uint16_t c = 1; c <= t.sigma; c++)
        for (std::uint64_t k = 1; k <= rb.run_count(); k++) {
            std::uint64_t expect = 0;
            for (std::uint64_t j = 1; j < k; j++)
                if (rb.run_symbol(j) == c) expect = j;
            auto got = rb.prev_run_of_symbol(c, k);
            if (expect == 0)
                CHECK(!got.has_value());
            else
                CHECK(got == expect);
        }
}

TEST_CASE("random texts agree with brute force") {
    std::mt19937_64 rng(31);
    const std::string alphabets[] = {"ab", "acgt", "abcdefghijklmnop"};
    for (int round = 0; round < 24; round++) {
        const std::string& alpha = alphabets[round % 3];
        std::uniform_int_distribution<std::size_t> len(1, 200);
        std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
        std::string text;
        std::size_t m = len(rng);
        for (std::size_t i = 0; i < m; i++) text.push_back(alpha[pick(rng)]);
        PreparedText t = prep(text);
        SuffixStructures st = build_suffix_structures(t);
        check_against_bwt(make(t, st), st.bwt, t.sigma);
    }
}

TEST_CASE("serialization preserves every query") {
    PreparedText t = prep("abracadabra");
    SuffixStructures st = build_suffix_structures(t);
    RunLengthBWT rb = make(t, st);
    ByteWriter w;
    rb.serialize(w);
    ByteReader r(w.data());
    RunLengthBWT back = RunLengthBWT::deserialize(r);
    CHECK(r.remaining() == 0);
    CHECK(back.run_count() == rb.run_count());
    check_against_bwt(back, st.bwt, t.sigma);
    ByteWriter w2;
    back.serialize(w2);
    CHECK(w.data() == w2.data());
}
