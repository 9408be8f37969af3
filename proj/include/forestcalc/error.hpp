#pragma once

#include <stdexcept>
#include <string>

namespace forestcalc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad blocks, bad JSON, inconsistent face data.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured size cap was exceeded; the message names the offending size.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::size_t size, std::size_t cap)
        : Error(what + ": size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)),
          size_(size), cap_(cap) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t size_;
    std::size_t cap_;
};

/// An operation was called outside its domain (e.g. a non-fusion given to a strictness test).
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace forestcalc
