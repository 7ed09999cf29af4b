#pragma once

#include <stdexcept>
#include <string>

namespace pindex {

enum class ErrorKind {
    InvalidArgument,
    Domain,       // mathematically undefined input (e.g. p | a for an order)
    Validation,   // malformed group / spec / config
    Resource,     // a configured budget or cap would be exceeded
    Statistical,  // Monte-Carlo sample too small or inconsistent
    Ambiguous,    // Monte-Carlo could not separate two candidate degrees
    Unsupported,  // no unconditional result or outside the supported scope
    Parse,
    Overflow,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace pindex
