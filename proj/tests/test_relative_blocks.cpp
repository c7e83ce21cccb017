/* test_relative_blocks.cpp — block-copy random access to T, SA, ISA and LCP */

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rindex/corpus.hpp"
#include "rindex/errors.hpp"
#include "rindex/relative_blocks.hpp"
#include "test_util.hpp"

using namespace ridx;
using testutil::bytes;
using testutil::prep;

namespace {

struct Built {
    PreparedText text;
    SuffixStructures st;
    RelativeBlocks t_blocks, sa_blocks, isa_blocks;
    LocateIndex loc;  // carries the LCP windows
};

Built make(const std::vector<std::uint8_t>& raw, std::uint32_t leaf_width = 0,
           std::uint32_t window_width = 4) {
    Built b;
    b.text = prepare_text(raw);
    b.st = build_suffix_structures(b.text);
    b.t_blocks = RelativeBlocks::build(BlockDomain::Text, b.text, b.st, leaf_width);
    b.sa_blocks = RelativeBlocks::build(BlockDomain::DiffSa, b.text, b.st, leaf_width);
    b.isa_blocks = RelativeBlocks::build(BlockDomain::DiffIsa, b.text, b.st, leaf_width);
    b.loc = LocateIndex::build(b.text, b.st, window_width);
    return b;
}

void check_sweeps(const Built& b, const std::vector<std::uint8_t>& raw) {
    const std::uint64_t n = b.text.size();
    CHECK(b.t_blocks.extract(1, n - 1) == raw);
    CHECK(b.sa_blocks.sa_range(1, n) == b.st.sa);
    CHECK(b.isa_blocks.isa_range(1, n) == b.st.isa);
    CHECK(lcp_range(b.sa_blocks, b.loc, 1, n) == b.st.lcp);
}

void check_slices(const Built& b, const std::vector<std::uint8_t>& raw, std::uint64_t seed) {
    const std::uint64_t n = b.text.size();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pos(1, n);
    for (int k = 0; k < 40; k++) {
        std::uint64_t p = pos(rng);
        std::uniform_int_distribution<std::uint64_t> let(0, n - p + 1);
        std::uint64_t len = let(rng);
        if (p + len - 1 <= n - 1 && len > 0) {
            std::vector<std::uint8_t> expect(raw.begin() + static_cast<std::ptrdiff_t>(p - 1),
                                             raw.begin() + static_cast<std::ptrdiff_t>(p - 1 + len));
            CHECK(b.t_blocks.extract(p, len) == expect);
        }
        auto slice = [&](const std::vector<std::uint64_t>& full) {
            return std::vector<std::uint64_t>(full.begin() + static_cast<std::ptrdiff_t>(p - 1),
                                              full.begin() + static_cast<std::ptrdiff_t>(p - 1 + len));
        };
        CHECK(b.sa_blocks.sa_range(p, len) == slice(b.st.sa));
        CHECK(b.isa_blocks.isa_range(p, len) == slice(b.st.isa));
        CHECK(lcp_range(b.sa_blocks, b.loc, p, len) == slice(b.st.lcp));
    }
}

}  // namespace

TEST_CASE("highly repetitive text exercises the deep copy structure") {
    std::string s;
    for (int i = 0; i < 600; i++) s += "abab";
    std::vector<std::uint8_t> raw = bytes(s);
    Built b = make(raw);
    CHECK(!b.t_blocks.is_degenerate());
    CHECK(b.t_blocks.level_count() >= 3);  // genuinely multi-level
    CHECK(!b.sa_blocks.is_degenerate());
    CHECK(!b.isa_blocks.is_degenerate());
    check_sweeps(b, raw);
    check_slices(b, raw, 1);
    b.t_blocks.validate(b.text, b.st);
    b.sa_blocks.validate(b.text, b.st);
    b.isa_blocks.validate(b.text, b.st);
}

TEST_CASE("mutated copies corpus, all domains") {
    CorpusOptions opt;
    opt.length = 200;
    opt.copies = 10;
    opt.mutation_rate = 0.01;
    opt.alphabet = "ACGT";
    opt.rng_seed = 5;
    std::vector<std::uint8_t> raw = mutated_copies(opt);
    Built b = make(raw);
    check_sweeps(b, raw);
    check_slices(b, raw, 2);
    b.t_blocks.validate(b.text, b.st);
    b.sa_blocks.validate(b.text, b.st);
    b.isa_blocks.validate(b.text, b.st);
}

TEST_CASE("incompressible text falls back to verbatim storage") {
    Built b = make(bytes("mississippi"));
    CHECK(b.t_blocks.is_degenerate());  // n/r too small for blocks
    CHECK(b.t_blocks.level_count() == 1);
    check_sweeps(b, bytes("mississippi"));
    check_slices(b, bytes("mississippi"), 3);
    b.t_blocks.validate(b.text, b.st);
    b.sa_blocks.validate(b.text, b.st);
    b.isa_blocks.validate(b.text, b.st);
}

TEST_CASE("range validation") {
    Built b = make(bytes("mississippi"));
    const std::uint64_t n = b.text.size();
    CHECK(b.t_blocks.extract(1, 0).empty());
    CHECK(b.sa_blocks.sa_range(3, 0).empty());
    CHECK_THROWS_AS(b.t_blocks.extract(0, 1), OutOfRange);
    CHECK_THROWS_AS(b.t_blocks.extract(n, 1), OutOfRange);  // terminator is internal
    CHECK_THROWS_AS(b.t_blocks.extract(1, n), OutOfRange);
    CHECK_THROWS_AS(b.sa_blocks.sa_range(0, 1), OutOfRange);
    CHECK_THROWS_AS(b.sa_blocks.sa_range(1, n + 1), OutOfRange);
    CHECK_THROWS_AS(b.isa_blocks.isa_range(n + 1, 1), OutOfRange);
    CHECK_THROWS_AS(lcp_range(b.sa_blocks, b.loc, 2, n), OutOfRange);
    // a structure only answers queries of its own domain
    CHECK_THROWS_AS(b.sa_blocks.extract(1, 1), std::logic_error);
    CHECK_THROWS_AS(b.t_blocks.sa_range(1, 1), std::logic_error);
    CHECK_THROWS_AS(b.t_blocks.isa_range(1, 1), std::logic_error);
}

TEST_CASE("serialization preserves structure and answers") {
    std::string s;
    for (int i = 0; i < 500; i++) s += "abcab";
    std::vector<std::uint8_t> raw = bytes(s);
    Built b = make(raw);
    for (const RelativeBlocks* rb : {&b.t_blocks, &b.sa_blocks, &b.isa_blocks}) {
        ByteWriter w;
        rb->serialize(w);
        ByteReader r(w.data());
        RelativeBlocks back = RelativeBlocks::deserialize(r);
        CHECK(r.remaining() == 0);
        CHECK(back.domain() == rb->domain());
        CHECK(back.size() == rb->size());
        CHECK(back.level_count() == rb->level_count());
        back.validate(b.text, b.st);
        ByteWriter w2;
        back.serialize(w2);
        CHECK(w.data() == w2.data());
    }
    ByteWriter w;
    b.sa_blocks.serialize(w);
    ByteReader r(w.data());
    RelativeBlocks back = RelativeBlocks::deserialize(r);
    CHECK(back.sa_range(1, b.text.size()) == b.st.sa);
}

TEST_CASE("explicit leaf width still answers correctly") {
    std::string s;
    for (int i = 0; i < 300; i++) s += "tataz";
    std::vector<std::uint8_t> raw = bytes(s);
    for (std::uint32_t alpha : {4u, 7u, 16u}) {
        Built b = make(raw, alpha);
        CHECK(b.t_blocks.leaf_width() == alpha);
        check_sweeps(b, raw);
        b.t_blocks.validate(b.text, b.st);
        b.sa_blocks.validate(b.text, b.st);
        b.isa_blocks.validate(b.text, b.st);
    }
}
