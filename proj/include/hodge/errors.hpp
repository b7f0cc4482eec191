#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hodge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input. The CLI maps these to exit code 2.
class InvalidInput : public Error {
public:
  using Error::Error;
};

class VariableCountMismatch : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class ContextMismatch : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// A rational coefficient is not p-integral.
class DenominatorDivisibleByP : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

/// Sum (beta_i + 1)/d is not a positive integer.
class NotIntegral : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class NotIntegrable : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class OutOfDomain : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class TargetOutOfRange : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class BlockSizeError : public InvalidInput {
public:
  using InvalidInput::InvalidInput;
};

class TransversalityViolation : public InvalidInput {
public:
  TransversalityViolation(std::size_t row_block, std::size_t col_block)
      : InvalidInput("Griffiths transversality violated: block (" + std::to_string(row_block) + ", " +
                     std::to_string(col_block) + ") is nonzero"),
        row_block(row_block), col_block(col_block) {}

  std::size_t row_block;
  std::size_t col_block;
};

class ParseError : public InvalidInput {
public:
  ParseError(const std::string& what, std::size_t position)
      : InvalidInput(what + " at position " + std::to_string(position)), position(position) {}

  std::size_t position;
};

/// Request exceeds a configured resource bound. The CLI maps these to exit code 3.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

}  // namespace hodge
