#pragma once

#include <stdexcept>
#include <string>

namespace rcs {

// One exception type for the whole library; the code selects the C API /
// process exit mapping (user error vs internal invariant violation).
class error : public std::runtime_error {
public:
    enum class code {
        invalid_argument,  // bad user input (flags, preconditions)
        io,                // unreadable/unwritable file
        parse,             // malformed file content
        domain,            // degenerate input for the requested statistic
        overflow,          // count would not fit a 64-bit integer
        internal,          // broken invariant; a bug, not a user error
    };

    error(code c, std::string msg) : std::runtime_error(std::move(msg)), code_(c) {}
    code kind() const { return code_; }

private:
    code code_;
};

[[noreturn]] inline void fail(error::code c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, error::code c, const std::string& msg) {
    if (!ok) fail(c, msg);
}

} // namespace rcs
