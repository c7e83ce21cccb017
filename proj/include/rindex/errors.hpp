/* errors.hpp — exception types thrown by the library's public API */

#pragma once

#include <stdexcept>
#include <string>

namespace ridx {

// raw input contains the reserved byte 0x00
struct TerminatorInInput : std::invalid_argument {
    explicit TerminatorInInput(const std::string& what) : std::invalid_argument(what) {}
};

// positions passed to SparseBits::from_positions are not strictly increasing
struct NotSorted : std::invalid_argument {
    explicit NotSorted(const std::string& what) : std::invalid_argument(what) {}
};

// a position lies outside the declared universe
struct OutOfUniverse : std::out_of_range {
    explicit OutOfUniverse(const std::string& what) : std::out_of_range(what) {}
};

// select1(k) with k outside [1..count]
struct RankOutOfRange : std::out_of_range {
    explicit RankOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// a 1-based position or length violates a documented precondition
struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// window query issued on an index built without window tables
struct WindowsNotBuilt : std::logic_error {
    explicit WindowsNotBuilt(const std::string& what) : std::logic_error(what) {}
};

// command needs an optional index section that is not present in the file
struct SectionMissing : std::runtime_error {
    explicit SectionMissing(const std::string& what) : std::runtime_error(what) {}
};

// index file is malformed, truncated, or fails its checksum
struct BadIndex : std::runtime_error {
    explicit BadIndex(const std::string& what) : std::runtime_error(what) {}
};

// filesystem-level failure (open/read/write)
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ridx
