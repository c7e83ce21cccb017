/* index_file.cpp — index assembly and the checksummed container format */

#include "rindex/index_file.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <cstring>

#include "rindex/errors.hpp"
#include "rindex/suffix.hpp"

namespace ridx {

namespace {

constexpr char kMagic[4] = {'R', 'I', 'D', 'X'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kFlagWindows = 1u << 0;
constexpr std::uint32_t kFlagTextBlocks = 1u << 1;
constexpr std::uint32_t kFlagSaBlocks = 1u << 2;
constexpr std::uint32_t kFlagIsaBlocks = 1u << 3;

std::uint32_t ceil_log2(std::uint64_t x) {
    std::uint32_t b = 0;
    while ((std::uint64_t{1} << b) < x) b++;
    return b;
}

void put_section(ByteWriter& out, const char tag[4], const ByteWriter& payload) {
    for (int i = 0; i < 4; i++) out.u8(static_cast<std::uint8_t>(tag[i]));
    out.u64le(payload.size());
    out.bytes(payload.data());
}

ByteReader open_section(ByteReader& in, const char tag[4]) {
    std::span<const std::uint8_t> got = in.take(4);
    if (std::memcmp(got.data(), tag, 4) != 0)
        throw BadIndex("expected section " + std::string(tag, 4) + ", found " +
                       std::string(reinterpret_cast<const char*>(got.data()), 4));
    std::uint64_t len = in.u64le();
    if (len > in.remaining()) throw BadIndex("section " + std::string(tag, 4) + " truncated");
    return ByteReader(in.take(len));
}

void close_section(ByteReader& r, const char tag[4]) {
    if (r.remaining() != 0)
        throw BadIndex("section " + std::string(tag, 4) + " has " +
                       std::to_string(r.remaining()) + " trailing bytes");
}

}  // namespace

Index Index::build(const std::vector<std::uint8_t>& text, const BuildOptions& opt) {
    PreparedText prepared = prepare_text(text);
    SuffixStructures st = build_suffix_structures(prepared);

    std::uint32_t s = opt.window_width;
    if (opt.lcp_support && s == 0) {
        // count runs directly; wide enough that window chains stay short
        std::uint64_t r = 1;
        for (std::uint64_t q = 1; q < st.bwt.size(); q++)
            if (st.bwt[q] != st.bwt[q - 1]) r++;
        s = std::max<std::uint32_t>(1, ceil_log2((st.bwt.size() + r - 1) / r));
    }

    Index idx;
    idx.loc_ = LocateIndex::build(prepared, st, s);
    if (opt.text_blocks)
        idx.text_ = RelativeBlocks::build(BlockDomain::Text, prepared, st, opt.leaf_width);
    if (opt.sa_blocks || opt.lcp_support)
        idx.sa_ = RelativeBlocks::build(BlockDomain::DiffSa, prepared, st, opt.leaf_width);
    if (opt.isa_blocks)
        idx.isa_ = RelativeBlocks::build(BlockDomain::DiffIsa, prepared, st, opt.leaf_width);
    return idx;
}

const RelativeBlocks& Index::text_blocks() const {
    if (!text_) throw SectionMissing("index was built without text blocks");
    return *text_;
}

const RelativeBlocks& Index::sa_blocks() const {
    if (!sa_) throw SectionMissing("index was built without suffix-array blocks");
    return *sa_;
}

const RelativeBlocks& Index::isa_blocks() const {
    if (!isa_) throw SectionMissing("index was built without inverse blocks");
    return *isa_;
}

std::uint64_t Index::count(std::span<const std::uint8_t> pattern) const {
    std::optional<Range> range = loc_.count(pattern);
    return range ? range->ep - range->sp + 1 : 0;
}

std::vector<std::uint64_t> Index::locate(std::span<const std::uint8_t> pattern) const {
    std::vector<std::uint64_t> hits = loc_.locate(pattern);
    std::sort(hits.begin(), hits.end());
    return hits;
}

std::vector<std::uint8_t> Index::extract(std::uint64_t i, std::uint64_t len) const {
    return text_blocks().extract(i, len);
}

std::vector<std::uint64_t> Index::sa_values(std::uint64_t p, std::uint64_t len) const {
    return sa_blocks().sa_range(p, len);
}

std::vector<std::uint64_t> Index::isa_values(std::uint64_t i, std::uint64_t len) const {
    return isa_blocks().isa_range(i, len);
}

std::vector<std::uint64_t> Index::lcp_values(std::uint64_t p, std::uint64_t len) const {
    if (!has_windows()) throw SectionMissing("index was built without window tables");
    return lcp_range(sa_blocks(), loc_, p, len);
}

std::vector<std::uint8_t> Index::serialize() const {
    ByteWriter out;
    for (char c : kMagic) out.u8(static_cast<std::uint8_t>(c));
    out.u32le(kVersion);
    std::uint32_t flags = 0;
    if (loc_.has_windows()) flags |= kFlagWindows;
    if (text_) flags |= kFlagTextBlocks;
    if (sa_) flags |= kFlagSaBlocks;
    if (isa_) flags |= kFlagIsaBlocks;
    out.u32le(flags);
    out.u64le(loc_.size());
    out.u64le(loc_.run_count());
    out.u32le(loc_.alphabet().sigma);

    auto section = [&](const char tag[4], auto&& fill) {
        ByteWriter payload;
        fill(payload);
        put_section(out, tag, payload);
    };
    section("ALPH", [&](ByteWriter& w) { loc_.alphabet().serialize(w); });
    section("RLFM", [&](ByteWriter& w) { loc_.rlbwt().serialize(w); });
    section("LOCT", [&](ByteWriter& w) { loc_.serialize(w); });
    if (loc_.has_windows()) section("WNDW", [&](ByteWriter& w) { loc_.windows().serialize(w); });
    if (text_) section("BLKT", [&](ByteWriter& w) { text_->serialize(w); });
    if (sa_) section("BLKS", [&](ByteWriter& w) { sa_->serialize(w); });
    if (isa_) section("BLKI", [&](ByteWriter& w) { isa_->serialize(w); });

    out.u64le(checksum64(out.data()));
    return out.take();
}

Index Index::deserialize(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4 + 4 + 4 + 8 + 8 + 4 + 8) throw BadIndex("file too short");
    std::uint64_t body = bytes.size() - 8;
    ByteReader trailer(std::span(bytes.data() + body, 8));
    if (trailer.u64le() != checksum64(std::span(bytes.data(), body)))
        throw BadIndex("checksum mismatch, file corrupted");

    ByteReader in(std::span(bytes.data(), body));
    if (std::memcmp(in.take(4).data(), kMagic, 4) != 0) throw BadIndex("not an index file");
    std::uint32_t version = in.u32le();
    if (version != kVersion) throw BadIndex("unsupported version " + std::to_string(version));
    std::uint32_t flags = in.u32le();
    if (flags & ~(kFlagWindows | kFlagTextBlocks | kFlagSaBlocks | kFlagIsaBlocks))
        throw BadIndex("unknown flag bits");
    std::uint64_t n = in.u64le();
    std::uint64_t r = in.u64le();
    std::uint32_t sigma = in.u32le();
    if (n == 0 || r == 0 || r > n || sigma == 0) throw BadIndex("implausible header");

    ByteReader alph = open_section(in, "ALPH");
    AlphabetMap alpha = AlphabetMap::deserialize(alph);
    close_section(alph, "ALPH");
    if (alpha.sigma != sigma) throw BadIndex("alphabet size disagrees with header");

    ByteReader rlfm = open_section(in, "RLFM");
    RunLengthBWT rlbwt = RunLengthBWT::deserialize(rlfm);
    close_section(rlfm, "RLFM");
    if (rlbwt.size() != n || rlbwt.run_count() != r || rlbwt.sigma() != sigma)
        throw BadIndex("run-length core disagrees with header");

    Index idx;
    ByteReader loct = open_section(in, "LOCT");
    idx.loc_ = LocateIndex::deserialize(loct, std::move(rlbwt), alpha);
    close_section(loct, "LOCT");

    if (flags & kFlagWindows) {
        ByteReader wndw = open_section(in, "WNDW");
        WindowTables wt = WindowTables::deserialize(wndw);
        close_section(wndw, "WNDW");
        idx.loc_.attach_windows(std::move(wt));
    }
    auto blocks = [&](const char tag[4]) {
        ByteReader sec = open_section(in, tag);
        RelativeBlocks rb = RelativeBlocks::deserialize(sec);
        close_section(sec, tag);
        if (rb.size() != n) throw BadIndex("block structure size disagrees with header");
        return rb;
    };
    if (flags & kFlagTextBlocks) {
        idx.text_ = blocks("BLKT");
        if (idx.text_->domain() != BlockDomain::Text) throw BadIndex("wrong domain in BLKT");
    }
    if (flags & kFlagSaBlocks) {
        idx.sa_ = blocks("BLKS");
        if (idx.sa_->domain() != BlockDomain::DiffSa) throw BadIndex("wrong domain in BLKS");
    }
    if (flags & kFlagIsaBlocks) {
        idx.isa_ = blocks("BLKI");
        if (idx.isa_->domain() != BlockDomain::DiffIsa) throw BadIndex("wrong domain in BLKI");
    }
    if (in.remaining() != 0) throw BadIndex("trailing bytes after last section");
    return idx;
}

void Index::save(const std::string& path) const {
    std::vector<std::uint8_t> bytes = serialize();
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw IoError("cannot open " + path + " for writing");
    std::size_t written = std::fwrite(bytes.data(), 1, bytes.size(), f);
    bool flushed = std::fclose(f) == 0;
    if (written != bytes.size() || !flushed) throw IoError("short write to " + path);
}

Index Index::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) throw IoError("cannot open " + path);
    std::fseek(f, 0, SEEK_END);
    long size = std::ftell(f);
    if (size < 0) {
        std::fclose(f);
        throw IoError("cannot size " + path);
    }
    std::fseek(f, 0, SEEK_SET);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    std::size_t got = std::fread(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
    if (got != bytes.size()) throw IoError("short read from " + path);
    return deserialize(bytes);
}

std::vector<SectionSize> Index::section_sizes() const {
    std::vector<SectionSize> sizes;
    auto add = [&](const char* name, auto&& fill) {
        ByteWriter payload;
        fill(payload);
        sizes.push_back(SectionSize{name, payload.size()});
    };
    add("ALPH", [&](ByteWriter& w) { loc_.alphabet().serialize(w); });
    add("RLFM", [&](ByteWriter& w) { loc_.rlbwt().serialize(w); });
    add("LOCT", [&](ByteWriter& w) { loc_.serialize(w); });
    if (loc_.has_windows()) add("WNDW", [&](ByteWriter& w) { loc_.windows().serialize(w); });
    if (text_) add("BLKT", [&](ByteWriter& w) { text_->serialize(w); });
    if (sa_) add("BLKS", [&](ByteWriter& w) { sa_->serialize(w); });
    if (isa_) add("BLKI", [&](ByteWriter& w) { isa_->serialize(w); });
    return sizes;
}

}  // namespace ridx
