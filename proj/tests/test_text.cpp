/* test_text.cpp — byte-to-symbol preparation */

#include <vector>

#include "doctest.h"
#include "rindex/errors.hpp"
#include "rindex/text.hpp"
#include "test_util.hpp"

using namespace ridx;
using testutil::bytes;
using testutil::prep;

TEST_CASE("codes are dense and order preserving") {
    PreparedText t = prep("mississippi");
    CHECK(t.size() == 12);
    CHECK(t.sigma == 5);  // terminator + i,m,p,s
    CHECK(t.symbols.back() == kTerminator);
    // i < m < p < s as bytes, so codes follow
    CHECK(t.code_of['i'] == 2);
    CHECK(t.code_of['m'] == 3);
    CHECK(t.code_of['p'] == 4);
    CHECK(t.code_of['s'] == 5);
    CHECK(t.code_of['x'] == -1);
    CHECK(t.byte_of[2] == 'i');
    CHECK(t.byte_of[5] == 's');
    std::vector<std::uint16_t> expect{3, 2, 5, 5, 2, 5, 5, 2, 4, 4, 2, 1};
    CHECK(t.symbols == expect);
}

TEST_CASE("round trip restores the original bytes") {
    for (const char* s : {"mississippi", "a", "abcabc", "zzzzzz"}) {
        PreparedText t = prep(s);
        CHECK(restore_bytes(t) == bytes(s));
    }
}

TEST_CASE("empty input becomes the lone terminator") {
    PreparedText t = prep("");
    CHECK(t.size() == 1);
    CHECK(t.sigma == 1);
    CHECK(t.symbols == std::vector<std::uint16_t>{kTerminator});
    CHECK(restore_bytes(t).empty());
}

TEST_CASE("byte 0 is rejected") {
    std::vector<std::uint8_t> raw{'a', 0, 'b'};
    CHECK_THROWS_AS(prepare_text(raw), TerminatorInInput);
}

TEST_CASE("extreme byte values map fine") {
    std::vector<std::uint8_t> raw{1, 255, 1};
    PreparedText t = prepare_text(raw);
    CHECK(t.sigma == 3);
    CHECK(t.symbols == std::vector<std::uint16_t>{2, 3, 2, 1});
    CHECK(restore_bytes(t) == raw);
}
