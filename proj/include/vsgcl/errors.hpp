// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vsgcl {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input: unreadable/ill-formed config file, unknown key, violated
// parameter invariant, malformed CLI override.  Maps to process exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// Numeric failure: no equilibrium, bracket not found, divergent integration,
// iteration that fails to converge.  Maps to process exit code 3.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace vsgcl
