#pragma once

#include <stdexcept>
#include <string>

namespace fslsense {

/// Invalid argument or parameter outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem size above a desk-scale ceiling.
class SizeLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Configuration the implementation deliberately does not support.
class UnsupportedConfiguration : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Non-finite intermediates, solver failures, under-resolved quadratures.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fslsense
