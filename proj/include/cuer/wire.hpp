#pragma once
#include <bit>
#include <cstdint>
#include <istream>
#include <string>

#include "cuer/errors.hpp"

namespace cuer::wire {

// Little-endian fixed-width encoding shared by the binary file formats.

inline void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

/// Tracks the byte offset so truncation and corruption are reported in
/// ParseError terms the caller can act on.
class StreamReader {
public:
    explicit StreamReader(std::istream& in) : in_(in) {}

    std::uint64_t offset() const { return offset_; }

    bool at_eof() {
        return in_.peek() == std::char_traits<char>::eof();
    }

    std::uint8_t u8() {
        int c = in_.get();
        if (c == std::char_traits<char>::eof()) {
            throw ParseError("unexpected end of file", offset_);
        }
        ++offset_;
        return static_cast<std::uint8_t>(c);
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    void bytes(char* dst, std::size_t n) {
        if (!in_.read(dst, static_cast<std::streamsize>(n))) {
            throw ParseError("unexpected end of file", offset_ + in_.gcount());
        }
        offset_ += n;
    }

private:
    std::istream& in_;
    std::uint64_t offset_ = 0;
};

} // namespace cuer::wire
