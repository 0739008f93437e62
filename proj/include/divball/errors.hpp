#pragma once

#include <stdexcept>

namespace divball {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// invalid construction input or violated model invariant
struct ValidationError : Error { using Error::Error; };
// vector length does not match the scenario space
struct DimensionError : Error { using Error::Error; };
// argument outside the mathematical domain of the operation
struct DomainError : Error { using Error::Error; };
// iterative scheme exhausted its expansion/iteration budget
struct ConvergenceError : Error { using Error::Error; };
// brute-force oracle restricted to tiny spaces
struct SizeError : Error { using Error::Error; };
// requested quantity undefined for the input (e.g. infinite divergence)
struct UndefinedError : Error { using Error::Error; };

}  // namespace divball
