#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmdd {

// Base error. CLI exit codes: 0 success, 2 config/argument error,
// 3 file format error, 4 numeric failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed file on disk. Carries the byte offset where parsing failed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t byte_offset)
        : Error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Non-finite value produced where a finite one is required. Optionally
// carries the step index of the loop that produced it.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}

    NumericError(const std::string& what, std::size_t step_index)
        : Error(what + " (step " + std::to_string(step_index) + ")"),
          step_(step_index), has_step_(true) {}

    bool has_step() const noexcept { return has_step_; }
    std::size_t step_index() const noexcept { return step_; }

private:
    std::size_t step_ = 0;
    bool has_step_ = false;
};

// Requested a feature from an empty per-class bucket.
class BufferUnderflow : public Error {
public:
    using Error::Error;
};

// Input set cannot support the requested operation (e.g. single-class data).
class DegenerateData : public Error {
public:
    using Error::Error;
};

} // namespace mmdd
