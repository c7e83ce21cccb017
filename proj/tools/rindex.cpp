/* rindex.cpp — command-line front end: build, query, generate, measure */

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "rindex/corpus.hpp"
#include "rindex/errors.hpp"
#include "rindex/index_file.hpp"
#include "rindex/selftest.hpp"

namespace {

using ridx::BuildOptions;
using ridx::CorpusOptions;
using ridx::Index;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ridx::IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) throw ridx::IoError("read error on " + path);
    return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ridx::IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.good()) throw ridx::IoError("short write to " + path);
}

std::vector<std::uint8_t> decode_hex(const std::string& line) {
    std::string compact;
    for (char c : line)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    if (compact.size() % 2 != 0)
        throw ridx::IoError("hex pattern has odd digit count: " + line);
    auto nibble = [&](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ridx::IoError(std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> bytes(compact.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); i++)
        bytes[i] = static_cast<std::uint8_t>(nibble(compact[2 * i]) * 16 + nibble(compact[2 * i + 1]));
    return bytes;
}

// one pattern from the command line, or newline-delimited patterns from a file
std::vector<std::pair<std::string, std::vector<std::uint8_t>>> gather_patterns(
    const std::string& inline_pattern, const std::string& file, bool hex) {
    std::vector<std::string> lines;
    if (!file.empty()) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw ridx::IoError("cannot open " + file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines.push_back(line);
        }
    } else {
        lines.push_back(inline_pattern);
    }
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> out;
    out.reserve(lines.size());
    for (const std::string& line : lines)
        out.emplace_back(line, hex ? decode_hex(line)
                                   : std::vector<std::uint8_t>(line.begin(), line.end()));
    return out;
}

unsigned worker_count() {
    const char* env = std::getenv("RINDEX_THREADS");
    if (env == nullptr) return 1;
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return v > 64 ? 64 : static_cast<unsigned>(v);
}

// runs f(i) for i in [0..count), fanned out over RINDEX_THREADS workers;
// every f(i) is independent and writes only its own slot
template <typename F>
void parallel_for(std::size_t count, F&& f) {
    std::size_t workers = std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; w++)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) f(i);
        });
    for (std::thread& t : pool) t.join();
}

int cmd_build(const std::string& input, const std::string& output, std::uint32_t windows,
              const std::vector<std::string>& blocks, bool all) {
    BuildOptions opt;
    opt.window_width = windows;
    for (const std::string& b : blocks) {
        if (b == "text")
            opt.text_blocks = true;
        else if (b == "sa")
            opt.sa_blocks = true;
        else if (b == "isa")
            opt.isa_blocks = true;
        else if (b == "lcp")
            opt.lcp_support = true;
        else
            throw ridx::IoError("unknown --blocks value '" + b + "' (text|sa|isa|lcp)");
    }
    // lcp_support picks a default window width when none was given
    if (all) opt.text_blocks = opt.sa_blocks = opt.isa_blocks = opt.lcp_support = true;
    Index idx = Index::build(read_file(input), opt);
    idx.save(output);
    double bits = static_cast<double>(idx.serialize().size()) * 8.0;
    std::printf("n=%llu r=%llu sigma=%u bits_per_symbol=%.3f\n",
                static_cast<unsigned long long>(idx.size()),
                static_cast<unsigned long long>(idx.run_count()),
                idx.locate_index().alphabet().sigma, bits / static_cast<double>(idx.size()));
    return 0;
}

int cmd_count(const Index& idx, const std::string& pattern, const std::string& file, bool hex) {
    auto patterns = gather_patterns(pattern, file, hex);
    std::vector<std::uint64_t> counts(patterns.size());
    parallel_for(patterns.size(), [&](std::size_t i) { counts[i] = idx.count(patterns[i].second); });
    for (std::uint64_t c : counts) std::printf("%llu\n", static_cast<unsigned long long>(c));
    return 0;
}

int cmd_locate(const Index& idx, const std::string& pattern, const std::string& file, bool hex) {
    auto patterns = gather_patterns(pattern, file, hex);
    std::vector<std::string> lines(patterns.size());
    parallel_for(patterns.size(), [&](std::size_t i) {
        std::ostringstream out;
        std::vector<std::uint64_t> hits = idx.locate(patterns[i].second);
        for (std::size_t j = 0; j < hits.size(); j++) out << (j ? " " : "") << hits[j];
        lines[i] = out.str();
    });
    for (const std::string& line : lines) std::printf("%s\n", line.c_str());
    return 0;
}

int cmd_values(const std::vector<std::uint64_t>& values) {
    std::ostringstream out;
    for (std::size_t j = 0; j < values.size(); j++) out << (j ? " " : "") << values[j];
    std::printf("%s\n", out.str().c_str());
    return 0;
}

int cmd_gen(const std::string& output, const std::string& kind, const CorpusOptions& opt,
            const std::string& input) {
    std::vector<std::uint8_t> bytes;
    if (kind == "mutated-copies")
        bytes = ridx::mutated_copies(opt);
    else if (kind == "random")
        bytes = ridx::random_text(opt);
    else if (kind == "file") {
        if (input.empty()) throw ridx::IoError("--in required for kind=file");
        bytes = read_file(input);
    } else
        throw ridx::IoError("unknown kind '" + kind + "' (mutated-copies|random|file)");
    write_file(output, bytes);
    std::printf("wrote %llu bytes to %s\n", static_cast<unsigned long long>(bytes.size()),
                output.c_str());
    return 0;
}

int cmd_stats(const Index& idx) {
    auto n = static_cast<double>(idx.size());
    auto r = static_cast<double>(idx.run_count());
    double sigma = idx.locate_index().alphabet().sigma;
    std::uint64_t total = idx.serialize().size();
    std::printf("n=%llu r=%llu sigma=%u\n", static_cast<unsigned long long>(idx.size()),
                static_cast<unsigned long long>(idx.run_count()),
                idx.locate_index().alphabet().sigma);
    std::printf("total: %llu bytes, %.3f bits/symbol\n", static_cast<unsigned long long>(total),
                static_cast<double>(total) * 8.0 / n);
    for (const ridx::SectionSize& s : idx.section_sizes())
        std::printf("section %s: %llu bytes, %.3f bits/symbol\n", s.name.c_str(),
                    static_cast<unsigned long long>(s.bytes),
                    static_cast<double>(s.bytes) * 8.0 / n);
    // reference budget: (1+eps) r (log2(n/r)+2) + 2 r log2 n + r log2 sigma, eps = 0.5
    double budget = 1.5 * r * (std::log2(n / r) + 2.0) + 2.0 * r * std::log2(n) + r * std::log2(sigma);
    std::printf("budget: 1.5*r*(log2(n/r)+2) + 2*r*log2(n) + r*log2(sigma) = %.1f bits\n", budget);
    std::printf("serialized/budget = %.3f\n", static_cast<double>(total) * 8.0 / budget);
    return 0;
}

int cmd_bench(const Index& idx, const std::string& file, std::uint32_t reps, bool hex) {
    auto patterns = gather_patterns("", file, hex);
    std::printf("pattern,occ,total_ns,ns_per_occ\n");
    if (reps == 0) return 0;
    struct Row {
        std::uint64_t occ = 0;
        std::uint64_t total_ns = 0;
    };
    std::vector<Row> rows(patterns.size());
    parallel_for(patterns.size(), [&](std::size_t i) {
        auto begin = std::chrono::steady_clock::now();
        std::uint64_t occ = 0;
        for (std::uint32_t rep = 0; rep < reps; rep++)
            occ = idx.locate(patterns[i].second).size();
        auto end = std::chrono::steady_clock::now();
        rows[i] = Row{occ, static_cast<std::uint64_t>(
                               std::chrono::duration_cast<std::chrono::nanoseconds>(end - begin)
                                   .count())};
    });
    for (std::size_t i = 0; i < patterns.size(); i++) {
        double per_occ = rows[i].occ == 0
                             ? 0.0
                             : static_cast<double>(rows[i].total_ns) /
                                   (static_cast<double>(rows[i].occ) * static_cast<double>(reps));
        std::printf("%s,%llu,%llu,%.1f\n", patterns[i].first.c_str(),
                    static_cast<unsigned long long>(rows[i].occ),
                    static_cast<unsigned long long>(rows[i].total_ns), per_occ);
    }
    return 0;
}

int cmd_selftest(bool quick) {
    std::vector<ridx::CheckResult> results = ridx::run_acceptance_checks(quick);
    bool all_pass = true;
    for (const ridx::CheckResult& c : results) {
        all_pass = all_pass && c.pass;
        std::printf("%s  %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    }
    std::printf("%s\n", all_pass ? "all checks passed" : "CHECKS FAILED");
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"run-length BWT self-index: build, query, generate, measure"};
    app.require_subcommand(1);

    std::string input, output, index_path, pattern, pattern_file, kind = "mutated-copies";
    std::uint64_t pos = 1, len = 1;
    std::uint32_t windows = 0, reps = 1;
    std::vector<std::string> blocks;
    bool all = false, hex = false, quick = false;
    CorpusOptions corpus;

    CLI::App* build = app.add_subcommand("build", "build an index from a text file");
    build->add_option("input", input, "text file (must not contain byte 0)")->required();
    build->add_option("output", output, "index file to write")->required();
    build->add_option("--windows", windows, "window width s for SA/LCP neighbour access");
    build->add_option("--blocks", blocks, "block sections to add: text, sa, isa, lcp")
        ->delimiter(',');
    build->add_flag("--all", all, "enable every optional section");

    auto add_query = [&](const char* name, const char* help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("index", index_path, "index file")->required();
        return cmd;
    };
    auto add_pattern_opts = [&](CLI::App* cmd) {
        cmd->add_option("pattern", pattern, "pattern given inline");
        cmd->add_option("--file", pattern_file, "newline-delimited pattern file");
        cmd->add_flag("--hex", hex, "patterns are hex-encoded bytes");
    };
    CLI::App* count = add_query("count", "number of occurrences per pattern");
    add_pattern_opts(count);
    CLI::App* locate = add_query("locate", "ascending occurrence positions per pattern");
    add_pattern_opts(locate);

    CLI::App* extract = add_query("extract", "recover text bytes (needs --blocks text)");
    extract->add_option("start", pos, "first position, 1-based")->required();
    extract->add_option("length", len, "number of bytes")->required();
    CLI::App* sa = add_query("sa", "suffix-array values (needs --blocks sa)");
    sa->add_option("row", pos, "first row, 1-based")->required();
    sa->add_option("length", len, "number of values")->required();
    CLI::App* isa = add_query("isa", "inverse suffix-array values (needs --blocks isa)");
    isa->add_option("position", pos, "first position, 1-based")->required();
    isa->add_option("length", len, "number of values")->required();
    CLI::App* lcp = add_query("lcp", "LCP values (needs --blocks lcp)");
    lcp->add_option("row", pos, "first row, 1-based")->required();
    lcp->add_option("length", len, "number of values")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate a corpus file");
    gen->add_option("output", output, "corpus file to write")->required();
    gen->add_option("--kind", kind, "mutated-copies | random | file");
    gen->add_option("--seed-len", corpus.length, "seed length in bytes");
    gen->add_option("--copies", corpus.copies, "total copies of the seed");
    gen->add_option("--mutation-rate", corpus.mutation_rate, "per-character substitution probability");
    gen->add_option("--alphabet", corpus.alphabet, "alphabet bytes");
    gen->add_option("--rng-seed", corpus.rng_seed, "random generator seed");
    gen->add_option("--in", input, "source file for kind=file");

    CLI::App* stats = add_query("stats", "size report per section plus reference budget");
    CLI::App* bench = add_query("bench", "CSV timing per pattern");
    bench->add_option("--file", pattern_file, "newline-delimited pattern file")->required();
    bench->add_option("--reps", reps, "repetitions per pattern (0: header only)");
    bench->add_flag("--hex", hex, "patterns are hex-encoded bytes");

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance checks");
    selftest->add_flag("--quick", quick, "smaller generated corpus");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return cmd_build(input, output, windows, blocks, all);
        if (gen->parsed()) return cmd_gen(output, kind, corpus, input);
        if (selftest->parsed()) return cmd_selftest(quick);

        Index idx = Index::load(index_path);
        if (count->parsed()) return cmd_count(idx, pattern, pattern_file, hex);
        if (locate->parsed()) return cmd_locate(idx, pattern, pattern_file, hex);
        if (extract->parsed()) {
            std::vector<std::uint8_t> bytes = idx.extract(pos, len);
            std::fwrite(bytes.data(), 1, bytes.size(), stdout);
            std::printf("\n");
            return 0;
        }
        if (sa->parsed()) return cmd_values(idx.sa_values(pos, len));
        if (isa->parsed()) return cmd_values(idx.isa_values(pos, len));
        if (lcp->parsed()) return cmd_values(idx.lcp_values(pos, len));
        if (stats->parsed()) return cmd_stats(idx);
        if (bench->parsed()) return cmd_bench(idx, pattern_file, reps, hex);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
