#pragma once

#include <stdexcept>
#include <string>

namespace dissem {

/// Base for every error raised by the library. `exit_code()` is the CLI contract:
/// 1 input error, 2 mathematically unsolvable, 3 cap exceeded.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 1; }
};

/// Malformed or inconsistent input (dimension mismatch, invalid instance, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

class UnsolvableError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 2; }
};

class CapError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

class NotOneRoundSolvable : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

class NotSolvable : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

class RoundsTooFew : public UnsolvableError {
 public:
  RoundsTooFew(const std::string& what, int required)
      : UnsolvableError(what), required_(required) {}
  int required_rounds() const { return required_; }

 private:
  int required_;
};

class NoDecoding : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

class InfeasibleInstance : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

class ReceiverUncovered : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

/// Raised when a dmax-normalized ratio is requested for a zero-cost instance.
class DivisionByZero : public UnsolvableError {
 public:
  using UnsolvableError::UnsolvableError;
};

/// A vector broadcast outside the sender's knowledge span. Signals a solver bug.
class IllegalTransmission : public InputError {
 public:
  IllegalTransmission(const std::string& what, int round, int node)
      : InputError(what), round_(round), node_(node) {}
  int round() const { return round_; }
  int node() const { return node_; }

 private:
  int round_;
  int node_;
};

class SearchCapExceeded : public CapError {
 public:
  using CapError::CapError;
};

class CapExceeded : public CapError {
 public:
  using CapError::CapError;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

}  // namespace dissem
