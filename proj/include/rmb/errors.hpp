#pragma once

#include <stdexcept>
#include <string>

namespace rmb {

// Invalid configuration detected before a run starts.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure during stepping (NaN/overflow), with grid location context.
struct RunError : std::runtime_error {
    explicit RunError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rmb
