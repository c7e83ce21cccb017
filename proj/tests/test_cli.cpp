/* test_cli.cpp — end-to-end runs of the command-line binary */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("rindex_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

// runs the binary with the given arguments, captures exit status and both streams
CmdResult run(const std::string& args, const std::string& env_prefix = "") {
    fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + RINDEX_CLI_PATH + " " + args +
                      " >" + out.string() + " 2>" + err.string();
    int raw = std::system(cmd.c_str());
    CmdResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string q(const fs::path& p) { return p.string(); }

// builds the shared mississippi fixtures once, whichever case runs first
void ensure_fixture() {
    if (fs::exists(work_dir() / "m0.idx")) return;
    spit(work_dir() / "m.txt", "mississippi");  // no trailing newline
    run("build " + q(work_dir() / "m.txt") + " " + q(work_dir() / "m.idx") + " --all --windows 4");
    run("build " + q(work_dir() / "m.txt") + " " + q(work_dir() / "m0.idx"));
}

}  // namespace

TEST_CASE("build reports the core measures") {
    spit(work_dir() / "m.txt", "mississippi");  // no trailing newline
    CmdResult r = run("build " + q(work_dir() / "m.txt") + " " + q(work_dir() / "m.idx") +
                      " --all --windows 4");
    CHECK(r.status == 0);
    CHECK(r.out.find("n=12 ") != std::string::npos);
    CHECK(r.out.find("r=9 ") != std::string::npos);
    CHECK(r.out.find("sigma=5 ") != std::string::npos);
    CHECK(r.out.find("bits_per_symbol=") != std::string::npos);

    // a baseline index of the same text, no optional sections
    CmdResult r0 = run("build " + q(work_dir() / "m.txt") + " " + q(work_dir() / "m0.idx"));
    CHECK(r0.status == 0);
}


TEST_CASE("count, locate, extract, arrays") {
    ensure_fixture();
    std::string idx = q(work_dir() / "m.idx");
    CHECK(run("count " + idx + " ssi").out == "2\n");
    CHECK(run("count " + idx + " zz").out == "0\n");
    CHECK(run("locate " + idx + " ssi").out == "3 6\n");
    CHECK(run("locate " + idx + " zz").out == "\n");  // no occurrence: empty line
    CHECK(run("extract " + idx + " 4 4").out == "siss\n");
    CHECK(run("sa " + idx + " 1 12").out == "12 11 8 5 2 1 10 9 7 4 6 3\n");
    CHECK(run("isa " + idx + " 1 12").out == "6 5 12 10 4 11 9 3 8 7 2 1\n");
    CHECK(run("lcp " + idx + " 1 12").out == "0 0 1 1 4 0 0 1 0 2 1 3\n");
}

TEST_CASE("missing sections and broken inputs fail loudly") {
    ensure_fixture();
    std::string idx0 = q(work_dir() / "m0.idx");
    CmdResult r = run("lcp " + idx0 + " 1 5");
    CHECK(r.status == 1);
    CHECK(r.err.find("error:") != std::string::npos);
    CHECK(run("extract " + idx0 + " 1 3").status == 1);
    CHECK(run("sa " + idx0 + " 1 3").status == 1);
    CHECK(run("count " + q(work_dir() / "missing.idx") + " a").status == 1);
    CHECK(run("sa " + q(work_dir() / "m.idx") + " 1 13").status == 1);  // past the end
}

TEST_CASE("pattern files, hex patterns and worker fan-out") {
    ensure_fixture();
    std::string idx = q(work_dir() / "m.idx");
    spit(work_dir() / "pats.txt", "ssi\niss\ni\nzz\n");
    std::string expect_counts = "2\n2\n4\n0\n";
    std::string expect_locs = "3 6\n2 5\n2 5 8 11\n\n";
    CHECK(run("count " + idx + " --file " + q(work_dir() / "pats.txt")).out == expect_counts);
    CHECK(run("locate " + idx + " --file " + q(work_dir() / "pats.txt")).out == expect_locs);
    // worker fan-out must not change output or order
    CHECK(run("count " + idx + " --file " + q(work_dir() / "pats.txt"), "RINDEX_THREADS=4").out ==
          expect_counts);
    CHECK(run("locate " + idx + " --file " + q(work_dir() / "pats.txt"), "RINDEX_THREADS=4").out ==
          expect_locs);
    // 737373 is "sss"; 737369 is "ssi"
    spit(work_dir() / "hex.txt", "737369\n73 73 69\n");
    CHECK(run("count " + idx + " --hex --file " + q(work_dir() / "hex.txt")).out == "2\n2\n");
    CHECK(run("count " + idx + " --hex 6D697373").out == "1\n");  // "miss"
}

TEST_CASE("generation is deterministic") {
    ensure_fixture();
    std::string args = " --kind mutated-copies --seed-len 64 --copies 4 --mutation-rate 0.02"
                       " --alphabet ACGT --rng-seed 9";
    CHECK(run("gen " + q(work_dir() / "c1.txt") + args).status == 0);
    CHECK(run("gen " + q(work_dir() / "c2.txt") + args).status == 0);
    std::string c1 = slurp(work_dir() / "c1.txt");
    CHECK(c1 == slurp(work_dir() / "c2.txt"));
    CHECK(c1.size() == 256);

    CHECK(run("gen " + q(work_dir() / "r.txt") + " --kind random --seed-len 100").status == 0);
    CHECK(slurp(work_dir() / "r.txt").size() == 100);

    CHECK(run("gen " + q(work_dir() / "f.txt") + " --kind file --in " + q(work_dir() / "m.txt"))
              .status == 0);
    CHECK(slurp(work_dir() / "f.txt") == "mississippi");
    CHECK(run("gen " + q(work_dir() / "g.txt") + " --kind nonsense").status == 1);
}

TEST_CASE("stats and bench") {
    ensure_fixture();
    std::string idx = q(work_dir() / "m.idx");
    CmdResult st = run("stats " + idx);
    CHECK(st.status == 0);
    CHECK(st.out.find("n=12 r=9 sigma=5") != std::string::npos);
    CHECK(st.out.find("bits/symbol") != std::string::npos);
    CHECK(st.out.find("budget:") != std::string::npos);
    CHECK(st.out.find("section") != std::string::npos);

    spit(work_dir() / "bp.txt", "ssi\ni\n");
    CmdResult header_only = run("bench " + idx + " --file " + q(work_dir() / "bp.txt") + " --reps 0");
    CHECK(header_only.status == 0);
    CHECK(header_only.out == "pattern,occ,total_ns,ns_per_occ\n");
    CmdResult timed = run("bench " + idx + " --file " + q(work_dir() / "bp.txt") + " --reps 3");
    CHECK(timed.status == 0);
    CHECK(timed.out.find("pattern,occ,total_ns,ns_per_occ\n") == 0);
    CHECK(timed.out.find("ssi,2,") != std::string::npos);  // occ column cross-checks count
    CHECK(timed.out.find("i,4,") != std::string::npos);
}

TEST_CASE("empty input file") {
    spit(work_dir() / "e.txt", "");
    CmdResult r = run("build " + q(work_dir() / "e.txt") + " " + q(work_dir() / "e.idx"));
    CHECK(r.status == 0);
    CHECK(r.out.find("n=1 ") != std::string::npos);
    CHECK(r.out.find("r=1 ") != std::string::npos);
}
