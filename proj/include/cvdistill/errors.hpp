#pragma once

#include <stdexcept>
#include <string>

namespace cvd {

/// Bad dimensions, mode indices, or incompatible bases.
struct dimension_error : std::invalid_argument {
    explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical guard tripped: singular solve, vanishing trace, leakage above
/// bound, displacement outside the accuracy window, and the like.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent experiment configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cvd
