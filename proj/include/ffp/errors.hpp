#ifndef FFP_ERRORS_HPP
#define FFP_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffp {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape disagreement between operands. Keeps both sizes so callers and
// tests can inspect them without parsing the message.
class DimensionError : public Error {
public:
    DimensionError(const std::string& context, std::size_t expected, std::size_t actual)
        : Error(context + ": expected " + std::to_string(expected) +
                ", got " + std::to_string(actual)),
          expected_(expected),
          actual_(actual) {}

    std::size_t expected() const { return expected_; }
    std::size_t actual() const { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

// Malformed file content (IDX headers, model/optimizer text files).
// offset is the byte (or line) position the parser was looking at.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::uint64_t offset)
        : Error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// Filesystem-level failure: missing file, unwritable path, short write.
class IoError : public Error {
public:
    using Error::Error;
};

// Invalid argument value (bad label, bad shift, bad config field).
class ValueError : public Error {
public:
    using Error::Error;
};

} // namespace ffp

#endif
