#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fisdim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the expression parser; carries the byte offset of the failure
// and a description of what was expected there.
struct ParseError : Error {
    ParseError(std::size_t offset, std::string expected)
        : Error("parse error at offset " + std::to_string(offset) + ": expected " + expected),
          offset(offset),
          expected(std::move(expected)) {}
    std::size_t offset;
    std::string expected;
};

// Evaluation left the mathematical domain (sqrt of a negative, division by
// zero, non-integer power of a negative base).
struct DomainError : Error {
    using Error::Error;
};

// A structural or numerical precondition on the input system failed.
struct ValidationError : Error {
    using Error::Error;
};

// A grid function is not sampled finely enough for the requested quantity.
struct ResolutionError : Error {
    using Error::Error;
};

}  // namespace fisdim
