/* test_corpus.cpp — deterministic corpus generation */

#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "rindex/corpus.hpp"
#include "rindex/index_file.hpp"

using namespace ridx;

TEST_CASE("fixed seed means fixed bytes") {
    CorpusOptions opt;
    opt.length = 500;
    opt.copies = 6;
    opt.mutation_rate = 0.01;
    opt.rng_seed = 42;
    CHECK(mutated_copies(opt) == mutated_copies(opt));
    CHECK(random_text(opt) == random_text(opt));
    opt.rng_seed = 43;
    CHECK(mutated_copies(CorpusOptions{500, 6, 0.01, "ACGT", 42}) != mutated_copies(opt));
}

TEST_CASE("shape of the generated bytes") {
    CorpusOptions opt;
    opt.length = 200;
    opt.copies = 5;
    opt.mutation_rate = 0.0;
    opt.alphabet = "xyz";
    std::vector<std::uint8_t> text = mutated_copies(opt);
    REQUIRE(text.size() == 1000);
    // zero mutation: every copy equals the seed
    for (std::size_t c = 1; c < 5; c++)
        for (std::size_t i = 0; i < 200; i++) CHECK(text[c * 200 + i] == text[i]);
    for (std::uint8_t b : text) CHECK(opt.alphabet.find(static_cast<char>(b)) != std::string::npos);

    opt.copies = 1;
    CHECK(mutated_copies(opt).size() == 200);

    std::vector<std::uint8_t> plain = random_text(opt);
    CHECK(plain.size() == 200);
    for (std::uint8_t b : plain) CHECK(opt.alphabet.find(static_cast<char>(b)) != std::string::npos);
}

TEST_CASE("mutations change roughly rate*n characters") {
    CorpusOptions opt;
    opt.length = 2000;
    opt.copies = 2;
    opt.mutation_rate = 0.05;
    opt.alphabet = "ACGT";
    opt.rng_seed = 7;
    std::vector<std::uint8_t> text = mutated_copies(opt);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < 2000; i++) diff += text[i] != text[2000 + i];
    CHECK(diff > 40);   // expected 100
    CHECK(diff < 200);
}

TEST_CASE("repetitive output compresses into few runs") {
    CorpusOptions opt;
    opt.length = 300;
    opt.copies = 10;
    opt.mutation_rate = 0.0;
    opt.rng_seed = 3;
    Index idx = Index::build(mutated_copies(opt), BuildOptions{});
    CHECK(idx.size() == 3001);
    CHECK(idx.run_count() * 5 < idx.size());  // r is far below n
}

TEST_CASE("bad options are rejected") {
    CorpusOptions opt;
    opt.alphabet = "";
    CHECK_THROWS_AS(mutated_copies(opt), std::invalid_argument);
    opt.alphabet = "ACGT";
    opt.mutation_rate = 1.5;
    CHECK_THROWS_AS(mutated_copies(opt), std::invalid_argument);
    opt.mutation_rate = -0.1;
    CHECK_THROWS_AS(mutated_copies(opt), std::invalid_argument);
    opt.mutation_rate = 0.1;
    opt.copies = 0;
    CHECK_THROWS_AS(mutated_copies(opt), std::invalid_argument);
    opt.copies = 1;
    opt.alphabet = std::string(1, '\0');
    CHECK_THROWS_AS(random_text(opt), std::invalid_argument);
}
