#pragma once

#include <stdexcept>
#include <string>

namespace erw {

// Precondition violations on the mathematical domain (delta out of range,
// wrong cookie count for a closed form, truncation too small).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver exhausted its step budget without meeting tolerance.
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

// A gap search region contains no feasible point.
struct EmptyRegion : std::runtime_error {
    explicit EmptyRegion(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace erw
