#pragma once

#include <stdexcept>
#include <string>

namespace mbeq {

// Invalid parameters, malformed configs, inconsistent inputs. CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN/Inf propagation, singular linear systems, failed factorizations. CLI exit code 4.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace mbeq
