#pragma once

#include <stdexcept>
#include <string>

namespace gossipjam {

// Base for all library errors. Anything derived from InputError maps to
// exit code 2 in the CLI.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidTopology : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class ShapeError : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateInput : public InputError {
 public:
  using InputError::InputError;
};

/// A connected component exceeds the subset-DP node cap.
class ComponentTooLarge : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace gossipjam
