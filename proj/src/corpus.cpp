/* corpus.cpp — test text generators */

#include "rindex/corpus.hpp"

#include <cassert>
#include <random>
#include <stdexcept>

namespace ridx {

namespace {

void check_options(const CorpusOptions& opt) {
    if (opt.alphabet.empty()) throw std::invalid_argument("alphabet must not be empty");
    for (char c : opt.alphabet)
        if (c == '\0') throw std::invalid_argument("alphabet must not contain byte 0");
    if (opt.mutation_rate < 0.0 || opt.mutation_rate > 1.0)
        throw std::invalid_argument("mutation rate must be in [0,1]");
}

}  // namespace

std::vector<std::uint8_t> random_text(const CorpusOptions& opt) {
    check_options(opt);
    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_int_distribution<std::size_t> pick(0, opt.alphabet.size() - 1);
    std::vector<std::uint8_t> text(opt.length);
    for (auto& b : text) b = static_cast<std::uint8_t>(opt.alphabet[pick(rng)]);
    return text;
}

std::vector<std::uint8_t> mutated_copies(const CorpusOptions& opt) {
    check_options(opt);
    if (opt.copies == 0) throw std::invalid_argument("need at least one copy");
    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_int_distribution<std::size_t> pick(0, opt.alphabet.size() - 1);
    std::vector<std::uint8_t> seed(opt.length);
    for (auto& b : seed) b = static_cast<std::uint8_t>(opt.alphabet[pick(rng)]);

    std::vector<std::uint8_t> text;
    text.reserve(opt.length * opt.copies);
    text.insert(text.end(), seed.begin(), seed.end());
    std::bernoulli_distribution mutate(opt.mutation_rate);
    for (std::uint32_t c = 1; c < opt.copies; c++) {
        std::vector<std::uint8_t> copy = seed;
        for (auto& b : copy) {
            if (!mutate(rng)) continue;
            std::uint8_t now = b;
            while (now == b && opt.alphabet.size() > 1)
                now = static_cast<std::uint8_t>(opt.alphabet[pick(rng)]);
            b = now;
        }
        text.insert(text.end(), copy.begin(), copy.end());
    }
    return text;
}

}  // namespace ridx
