#pragma once
#include <stdexcept>
#include <string>

namespace cuer {

// Thrown when an operation needs at least one stored element / nonzero mass.
class EmptyError : public std::runtime_error {
public:
    explicit EmptyError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation produced or received a non-finite value.
// State is left untouched by the throwing operation.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration; message carries the offending field path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Corrupt or truncated binary input; message carries the byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::uint64_t byte_offset)
        : std::runtime_error(what + " (at byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::uint64_t byte_offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

} // namespace cuer
