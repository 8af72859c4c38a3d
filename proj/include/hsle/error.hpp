#pragma once

#include <stdexcept>
#include <string>

namespace hsle {

enum class ErrorKind {
    Parameter,
    Domain,
    Order,
    Singular,
    Swallowed,
    NotFound,
    Capacity,
    Invariant,
    StateCorruption,
    RecursionDepth,
    DegenerateEstimate,
    Usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hsle
