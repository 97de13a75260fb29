#pragma once

#include <stdexcept>
#include <string>

namespace relfuse {

/// Malformed or inconsistent input data (bad file, unknown name, shape
/// mismatch). Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (divergent training, non-finite loss). Maps to CLI
/// exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace relfuse
