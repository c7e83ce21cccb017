/* serialize.hpp — little-endian byte buffers, varints, packed integer vectors, checksum */

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rindex/errors.hpp"

namespace ridx {

class ByteWriter {
  public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u32le(std::uint32_t v) {
        for (int i = 0; i < 4; i++) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64le(std::uint64_t v) {
        for (int i = 0; i < 8; i++) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    // LEB128
    void varint(std::uint64_t v) {
        while (v >= 0x80) {
            buf_.push_back(static_cast<std::uint8_t>(v) | 0x80);
            v >>= 7;
        }
        buf_.push_back(static_cast<std::uint8_t>(v));
    }
    void svarint(std::int64_t v) {  // zigzag
        varint((static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
    }
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    std::size_t size() const { return buf_.size(); }
    const std::vector<std::uint8_t>& data() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

  private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
  public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}
    std::uint8_t u8() { return take(1)[0]; }
    std::uint32_t u32le() {
        auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; i++) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
        return v;
    }
    std::uint64_t u64le() {
        auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    }
    std::uint64_t varint() {
        std::uint64_t v = 0;
        int shift = 0;
        while (true) {
            if (shift > 63) throw BadIndex("varint too long");
            std::uint8_t b = u8();
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
            shift += 7;
        }
    }
    std::int64_t svarint() {
        std::uint64_t z = varint();
        return static_cast<std::int64_t>((z >> 1) ^ (~(z & 1) + 1));
    }
    std::span<const std::uint8_t> take(std::size_t len) {
        if (pos_ + len > data_.size()) throw BadIndex("unexpected end of index data");
        auto out = data_.subspan(pos_, len);
        pos_ += len;
        return out;
    }
    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    void seek(std::size_t p) {
        if (p > data_.size()) throw BadIndex("seek past end");
        pos_ = p;
    }

  private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

// fixed-width bit-packed unsigned values, little-endian within 64-bit words
class PackedInts {
  public:
    PackedInts() = default;
    PackedInts(std::uint32_t width, std::uint64_t count) : width_(width), count_(count) {
        if (width_ == 0 || width_ > 64) throw BadIndex("packed width out of range");
        words_.assign((count * width_ + 63) / 64, 0);
    }
    static std::uint32_t width_for(std::uint64_t max_value) {
        std::uint32_t w = 1;
        while (w < 64 && (max_value >> w) != 0) w++;
        return w;
    }
    void set(std::uint64_t i, std::uint64_t v) {
        std::uint64_t bit = i * width_;
        std::uint64_t word = bit / 64, off = bit % 64;
        words_[word] |= v << off;
        if (off + width_ > 64) words_[word + 1] |= v >> (64 - off);
    }
    std::uint64_t get(std::uint64_t i) const {
        std::uint64_t bit = i * width_;
        std::uint64_t word = bit / 64, off = bit % 64;
        std::uint64_t v = words_[word] >> off;
        if (off + width_ > 64) v |= words_[word + 1] << (64 - off);
        return width_ == 64 ? v : (v & ((std::uint64_t{1} << width_) - 1));
    }
    std::uint64_t size() const { return count_; }
    std::uint32_t width() const { return width_; }

    void serialize(ByteWriter& w) const {
        w.u8(static_cast<std::uint8_t>(width_));
        w.varint(count_);
        for (std::uint64_t word : words_) w.u64le(word);
    }
    static PackedInts deserialize(ByteReader& r) {
        std::uint32_t width = r.u8();
        std::uint64_t count = r.varint();
        PackedInts p(width, count);
        for (auto& word : p.words_) word = r.u64le();
        return p;
    }

  private:
    std::uint32_t width_ = 1;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// FNV-1a, 64-bit
inline std::uint64_t checksum64(std::span<const std::uint8_t> data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : data) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace ridx
