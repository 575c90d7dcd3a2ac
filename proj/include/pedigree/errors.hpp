#pragma once

#include <stdexcept>
#include <string>

namespace pedigree {

/// Malformed or inconsistent input (bad pedigree string, mismatched n, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural property that must hold on every instance was violated.
/// The message carries enough state to replay the failing instance.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Reading or writing an output/config file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pedigree
