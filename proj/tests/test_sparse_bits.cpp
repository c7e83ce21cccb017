/* test_sparse_bits.cpp — rank/select/pred/succ and the probe-count contract */

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "rindex/errors.hpp"
#include "rindex/sparse_bits.hpp"

using namespace ridx;

TEST_CASE("small fixture behaves like a sorted set") {
    SparseBits sb = SparseBits::from_positions({3, 5, 9}, 10);
    CHECK(sb.universe() == 10);
    CHECK(sb.count() == 3);
    std::vector<std::uint64_t> expect_rank{0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 3};
    for (std::uint64_t i = 0; i <= 10; i++) CHECK(sb.rank1(i) == expect_rank[i]);
    CHECK(sb.select1(1) == 3);
    CHECK(sb.select1(3) == 9);
    CHECK(!sb.pred(2).has_value());
    CHECK(sb.pred(3) == 3);
    CHECK(sb.pred(10) == 9);
    CHECK(sb.succ(1) == 3);
    CHECK(sb.succ(9) == 9);
    CHECK(!sb.succ(10).has_value());
}

TEST_CASE("invalid input is rejected") {
    CHECK_THROWS_AS(SparseBits::from_positions({5, 3}, 10), NotSorted);
    CHECK_THROWS_AS(SparseBits::from_positions({4, 4}, 10), NotSorted);
    CHECK_THROWS_AS(SparseBits::from_positions({0}, 10), OutOfUniverse);
    CHECK_THROWS_AS(SparseBits::from_positions({11}, 10), OutOfUniverse);
    SparseBits sb = SparseBits::from_positions({2}, 4);
    CHECK_THROWS_AS(sb.rank1(5), OutOfUniverse);
    CHECK_THROWS_AS(sb.select1(0), RankOutOfRange);
    CHECK_THROWS_AS(sb.select1(2), RankOutOfRange);
    CHECK_THROWS_AS(sb.pred(0), OutOfUniverse);
    CHECK_THROWS_AS(sb.succ(5), OutOfUniverse);
}

TEST_CASE("empty set") {
    SparseBits sb = SparseBits::from_positions({}, 7);
    for (std::uint64_t i = 0; i <= 7; i++) CHECK(sb.rank1(i) == 0);
    CHECK(!sb.pred(7).has_value());
    CHECK(!sb.succ(1).has_value());
}

TEST_CASE("rank matches brute force and probes stay logarithmic in bucket width") {
    std::mt19937_64 rng(123);
    for (auto [t, u] : {std::pair<std::uint64_t, std::uint64_t>{10, 1000},
                        {100, 1000},
                        {900, 1000},
                        {1000, 1000}}) {
        std::set<std::uint64_t> pos_set;
        std::uniform_int_distribution<std::uint64_t> d(1, u);
        while (pos_set.size() < t) pos_set.insert(d(rng));
        std::vector<std::uint64_t> positions(pos_set.begin(), pos_set.end());
        SparseBits sb = SparseBits::from_positions(positions, u);

        // one directory access plus a binary search over at most bucket_width cells
        std::uint64_t bucket_width = (u + t - 1) / t;
        std::uint64_t iters = 0;
        while ((1ull << iters) < bucket_width + 1) iters++;
        std::uint64_t probe_budget = 1 + iters;

        std::uint64_t brute = 0, k = 0;
        for (std::uint64_t i = 0; i <= u; i++) {
            if (k < positions.size() && positions[k] == i) brute = ++k;
            std::uint64_t probes = 0;
            CHECK(sb.rank1_probed(i, &probes) == brute);
            CHECK(probes <= probe_budget);
        }
        for (std::uint64_t j = 1; j <= t; j++) CHECK(sb.select1(j) == positions[j - 1]);
    }
}

TEST_CASE("serialization round trip") {
    SparseBits sb = SparseBits::from_positions({1, 2, 50, 899, 900}, 900);
    ByteWriter w;
    sb.serialize(w);
    ByteReader r(w.data());
    SparseBits back = SparseBits::deserialize(r);
    CHECK(r.remaining() == 0);
    CHECK(back.universe() == sb.universe());
    CHECK(back.count() == sb.count());
    for (std::uint64_t i = 0; i <= 900; i++) CHECK(back.rank1(i) == sb.rank1(i));
}

TEST_CASE("corrupt position streams are rejected") {
    {
        ByteWriter w;
        w.u64le(5);  // universe
        w.u64le(2);  // count
        w.varint(3);
        w.varint(0);  // zero delta: not strictly increasing
        ByteReader r(w.data());
        CHECK_THROWS_AS(SparseBits::deserialize(r), BadIndex);
    }
    {
        ByteWriter w;
        w.u64le(5);
        w.u64le(2);
        w.varint(3);
        w.varint(9);  // walks past the universe
        ByteReader r(w.data());
        CHECK_THROWS_AS(SparseBits::deserialize(r), BadIndex);
    }
}
