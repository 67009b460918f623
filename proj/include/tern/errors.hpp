#pragma once

#include <stdexcept>

namespace tern {

// Error taxonomy shared by the library and the CLI.
// The CLI maps these to exit codes: usage/config 2, data 3, numeric 4.

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tern
