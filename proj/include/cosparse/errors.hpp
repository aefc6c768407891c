#pragma once

#include <stdexcept>
#include <string>

namespace cosparse {

// Exit-code taxonomy shared by the library and the command-line tool.
enum class ExitCode : int {
    Ok = 0,
    Usage = 2,
    Data = 3,
    Precondition = 4,
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, ExitCode code)
        : std::runtime_error(what), code_(code) {}

    ExitCode code() const noexcept { return code_; }

private:
    ExitCode code_;
};

/// Malformed arguments: bad spec strings, unknown flags, out-of-range parameters.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what, ExitCode::Usage) {}
};

/// Unreadable or inconsistent input data (files, vector lengths).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what, ExitCode::Data) {}
};

/// A mathematical precondition does not hold (H_0, H_J, criterion >= 1, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what)
        : Error(what, ExitCode::Precondition) {}
};

}  // namespace cosparse
