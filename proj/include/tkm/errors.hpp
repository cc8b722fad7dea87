#pragma once

#include <stdexcept>

namespace tkm {

// Inconsistent shapes or invalid hyperparameters.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input coordinate outside the feature-map hyperbox.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed or version-incompatible on-disk artifact.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense materialization beyond the configured entry cap.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace tkm
