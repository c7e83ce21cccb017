/* test_locate_index.cpp — counting, toeholds, phi, locate and border windows */

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "rindex/errors.hpp"
#include "rindex/locate_index.hpp"
#include "test_util.hpp"

using namespace ridx;
using testutil::bytes;
using testutil::prep;

namespace {

std::string random_string(std::mt19937_64& rng, const std::string& alpha, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    std::string s;
    std::size_t m = len(rng);
    for (std::size_t i = 0; i < m; i++) s.push_back(alpha[pick(rng)]);
    return s;
}

}  // namespace

TEST_CASE("count and locate on the worked example") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    LocateIndex loc = LocateIndex::build(t, st, 0);
    CHECK(loc.size() == 12);
    CHECK(loc.run_count() == 9);
    CHECK(loc.last_suffix_position() == st.sa.back());

    auto ssi = loc.count(bytes("ssi"));
    REQUIRE(ssi.has_value());
    CHECK(*ssi == Range{11, 12});

    // locate reports descending row order: SA[ep] first
    CHECK(loc.locate(bytes("ssi")) == std::vector<std::uint64_t>{3, 6});
    CHECK(loc.locate(bytes("i")) == std::vector<std::uint64_t>{2, 5, 8, 11});  // from row ep up
    CHECK(loc.locate(bytes("mississippi")) == std::vector<std::uint64_t>{1});
    CHECK(!loc.count(bytes("issa")).has_value());
    CHECK(!loc.count(bytes("zzz")).has_value());
    CHECK(loc.count(bytes("")) == Range{1, 12});
}

TEST_CASE("toehold tracks the last row's suffix position") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    LocateIndex loc = LocateIndex::build(t, st, 0);
    for (const char* pat : {"ssi", "i", "s", "mis", "pi", "ississippi"}) {
        auto th = loc.count_with_toehold(bytes(pat));
        REQUIRE(th.has_value());
        CHECK(th->sa_ep == st.sa[th->range.ep - 1]);
    }
}

TEST_CASE("phi steps to the previous row's suffix position") {
    std::mt19937_64 rng(55);
    for (int round = 0; round < 16; round++) {
        PreparedText t = prep(random_string(rng, round % 2 ? "ab" : "acgt", 400));
        SuffixStructures st = build_suffix_structures(t);
        LocateIndex loc = LocateIndex::build(t, st, 0);
        for (std::uint64_t p = 2; p <= t.size(); p++) CHECK(loc.phi(st.sa[p - 1]) == st.sa[p - 2]);
        CHECK(loc.phi(st.sa[0]) == st.sa[t.size() - 1]);  // wraps
    }
}

TEST_CASE("windows return truncated neighbour slices") {
    PreparedText t = prep("mississippi");
    SuffixStructures st = build_suffix_structures(t);
    const std::uint32_t s = 3;
    LocateIndex loc = LocateIndex::build(t, st, s);
    REQUIRE(loc.has_windows());
    CHECK(loc.windows().s == s);
    const std::uint64_t n = t.size();
    for (std::uint64_t p = 1; p <= n; p++) {
        std::uint64_t v = st.sa[p - 1];
        for (std::uint32_t cnt = 1; cnt <= s; cnt++) {
            std::vector<std::uint64_t> expect;
            for (std::uint64_t q = p + 1; q <= std::min(n, p + cnt); q++) expect.push_back(st.sa[q - 1]);
            CHECK(loc.sa_window(v, Direction::Forward, cnt) == expect);

            expect.clear();
            for (std::uint64_t q = p; q >= 2 && expect.size() < cnt; q--) expect.push_back(st.sa[q - 2]);
            CHECK(loc.sa_window(v, Direction::Backward, cnt) == expect);

            expect.clear();
            for (std::uint64_t q = p + 1; q <= std::min(n, p + cnt); q++) expect.push_back(st.lcp[q - 1]);
            CHECK(loc.plcp_window(v, Direction::Forward, cnt) == expect);

            expect.clear();
            for (std::uint64_t q = p; q >= 1 && expect.size() < cnt; q--) expect.push_back(st.lcp[q - 1]);
            CHECK(loc.plcp_window(v, Direction::Backward, cnt) == expect);
        }
    }
}

TEST_CASE("windows are optional") {
    PreparedText t = prep("abc");
    SuffixStructures st = build_suffix_structures(t);
    LocateIndex loc = LocateIndex::build(t, st, 0);
    CHECK(!loc.has_windows());
    CHECK_THROWS_AS(loc.windows(), WindowsNotBuilt);
}

TEST_CASE("single-row index") {
    PreparedText t = prep("");
    SuffixStructures st = build_suffix_structures(t);
    LocateIndex loc = LocateIndex::build(t, st, 1);
    CHECK(loc.count(bytes("")) == Range{1, 1});
    CHECK(loc.locate(bytes("")) == std::vector<std::uint64_t>{1});
    CHECK(!loc.count(bytes("a")).has_value());
    CHECK(loc.phi(1) == 1);
    CHECK(loc.sa_window(1, Direction::Forward, 1).empty());
    CHECK(loc.sa_window(1, Direction::Backward, 1).empty());
    CHECK(loc.plcp_window(1, Direction::Backward, 1) == std::vector<std::uint64_t>{0});
    CHECK(loc.plcp_window(1, Direction::Forward, 1).empty());
}

TEST_CASE("locate agrees with the scanner on random texts") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 12; round++) {
        std::string text = random_string(rng, "ab", 300);
        PreparedText t = prep(text);
        SuffixStructures st = build_suffix_structures(t);
        LocateIndex loc = LocateIndex::build(t, st, 0);
        for (int k = 0; k < 40; k++) {
            std::string pat = random_string(rng, "ab", 8);
            std::vector<std::uint64_t> got = loc.locate(bytes(pat));
            std::sort(got.begin(), got.end());
            CHECK(got == naive_locate(t, bytes(pat)));
        }
    }
}
