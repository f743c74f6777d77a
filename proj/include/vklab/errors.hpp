#pragma once

#include <stdexcept>
#include <string>

namespace vklab {

// Thrown when a numerical procedure leaves its validated regime
// (norm bound violated, integrator failure, loss of positivity).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when the two-resolution quadrature estimate exceeds its budget.
struct QuadratureError : NumericalError {
    explicit QuadratureError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace vklab
