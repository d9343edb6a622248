#pragma once

#include <stdexcept>
#include <string>

namespace ntdlab {

/// Rejected input: a precondition on user-supplied data failed.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical failure at run time (singular solve, truncation guard, ...).
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ntdlab
