/* corpus.hpp — deterministic generators for repetitive and random test texts */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ridx {

struct CorpusOptions {
    std::uint64_t length = 1000;    // seed length in bytes
    std::uint32_t copies = 1;       // total copies of the seed, first one unmutated
    double mutation_rate = 0.0;     // per-character substitution probability in later copies
    std::string alphabet = "ACGT";  // candidate bytes, must not contain byte 0
    std::uint64_t rng_seed = 1;
};

// uniform random text of opt.length over opt.alphabet
std::vector<std::uint8_t> random_text(const CorpusOptions& opt);

// a random seed followed by copies-1 independently mutated copies of it; every
// character of a copy is replaced by a different alphabet byte with
// probability mutation_rate
std::vector<std::uint8_t> mutated_copies(const CorpusOptions& opt);

}  // namespace ridx
