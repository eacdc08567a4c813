// Error type shared by all pipeline stages; kinds map 1:1 onto CLI exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace flowtrace {

enum class ErrorKind {
    Input = 1,        // bad file, bad config, malformed record
    Invariant = 2,    // ledger or pipeline invariant violated
    MissingRate = 3,  // no exchange rate for a transaction date
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void fail_invariant(const std::string& msg) { throw Error(ErrorKind::Invariant, msg); }
[[noreturn]] inline void fail_rate(const std::string& msg) { throw Error(ErrorKind::MissingRate, msg); }

} // namespace flowtrace
