#pragma once

#include <stdexcept>
#include <string>

namespace gl {

// Raised when an input violates a documented precondition (exit code 2 in the CLI).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an algorithm fails numerically: non-convergence, unbracketed
// root, phase defect off the integer lattice (exit code 3 in the CLI).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gl
