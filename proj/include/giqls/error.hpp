#pragma once

#include <stdexcept>
#include <string>

namespace giqls {

// Domain failures (invalid group table, non-unitary matrix, ...).
// The CLI maps these to exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed requests (bad cycle text, unknown format, out-of-bounds knobs).
// The CLI maps these to exit code 2.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace giqls
