#pragma once

#include <stdexcept>
#include <string>

namespace wildsim {

// A replicate whose collision counter would exceed the configured cap.
// The record must be discarded, never truncated.
struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyCloudError : std::runtime_error {
  explicit EmptyCloudError(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientDataError : std::runtime_error {
  explicit InsufficientDataError(const std::string& what) : std::runtime_error(what) {}
};

struct StabilityViolationError : std::runtime_error {
  explicit StabilityViolationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wildsim
