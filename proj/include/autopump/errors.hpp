// errors.hpp
#pragma once

#include <stdexcept>
#include <string>

namespace autopump {

// Invalid run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Eigensolver failure, broken invariant, gap closure (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace autopump
