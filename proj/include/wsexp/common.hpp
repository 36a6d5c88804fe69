#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wsexp {

// Global comparison tolerance for probability mass arithmetic.
inline constexpr double kMassTolerance = 1e-9;

// Loader renormalizes mass vectors whose sum lies within this band around 1.
inline constexpr double kRenormTolerance = 1e-6;

using PointIndex = std::uint32_t;

// Malformed or inconsistent external input (files, CLI arguments).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition of an operation was violated (zero-mass conditioning set,
// parameter out of range, undefined robustness at an isolated point, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wsexp
