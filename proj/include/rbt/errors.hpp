#pragma once

#include <stdexcept>
#include <string>

namespace rbt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument sits on a pole of a gamma factor or Pochhammer denominator.
struct PoleError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// Series or quadrature did not reach the requested tolerance within its budget.
struct NonConvergence : Error {
    using Error::Error;
};

// Bad user configuration: unknown names, malformed options.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace rbt
