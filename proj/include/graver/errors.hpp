#pragma once

#include <stdexcept>
#include <string>

namespace graver {

/// Error categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
    Input = 2,
    Config = 3,
    Guard = 4,
    DegenerateModel = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

/// An entry references a vertex pair that is not an edge of the underlying graph.
struct InvalidEdgeError : InputError {
    using InputError::InputError;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Enumeration guard or generation budget exceeded.
struct GuardError : Error {
    explicit GuardError(const std::string& what) : Error(ErrorKind::Guard, what) {}
};

struct DegenerateModelError : Error {
    explicit DegenerateModelError(const std::string& what) : Error(ErrorKind::DegenerateModel, what) {}
};

/// Caller broke a documented precondition (e.g. tree_from_walk on a non-primitive walk).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace graver
