#pragma once

#include <stdexcept>
#include <string>

namespace qcode {

/// Broad failure classes; the CLI maps each to an exit code.
enum class ErrorKind {
    input,         // malformed input or violated precondition
    resource,      // a resource guard refused the request
    mismatch,      // two computation paths disagree
    precondition,  // the closed-form assumptions do not hold for this design
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& what) { throw Error(ErrorKind::input, what); }
[[noreturn]] inline void fail_resource(const std::string& what) { throw Error(ErrorKind::resource, what); }

inline int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::mismatch: return 1;
    case ErrorKind::input:
    case ErrorKind::precondition: return 2;
    case ErrorKind::resource: return 3;
    }
    return 2;
}

} // namespace qcode
