#pragma once

#include <stdexcept>
#include <string>

namespace pdn {

/// Input/file problems: malformed XML or TSV, missing aspects, bad checkpoints.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numeric failures during training (non-finite loss and friends).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace pdn
