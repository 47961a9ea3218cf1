#pragma once

#include <stdexcept>
#include <string>

namespace macari {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleTopologyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotACoordinatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GtsOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoCapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnreachableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace macari
