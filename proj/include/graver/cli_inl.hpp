#pragma once

#include <exception>
#include <stdexcept>

#include "graver/errors.hpp"

namespace graver::cli {

template <typename F>
CommandOutput run_guarded(F&& command) {
    try {
        return command();
    } catch (const Error& e) {
        CommandOutput out;
        out.exit_code = e.exit_code();
        out.err = std::string("error: ") + e.what() + "\n";
        return out;
    } catch (const PreconditionError& e) {
        CommandOutput out;
        out.exit_code = static_cast<int>(ErrorKind::Config);
        out.err = std::string("error: ") + e.what() + "\n";
        return out;
    }
}

}  // namespace graver::cli
