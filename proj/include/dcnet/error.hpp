#pragma once

#include <stdexcept>
#include <string>

namespace dcnet {

// Invalid or malformed input: bad samples, parse failures, dimension
// mismatches, out-of-range requests. Maps to CLI exit code 2.
class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: singular matrix beyond the ridge budget, internal
// consistency violations. Maps to CLI exit code 3.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dcnet
