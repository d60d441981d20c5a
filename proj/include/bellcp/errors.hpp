#pragma once

#include <stdexcept>
#include <string>

namespace bellcp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on an event of probability zero.
class ZeroConditioningEvent : public Error {
 public:
  using Error::Error;
};

/// Input violates a structural invariant (normalization, range, positivity).
class InvalidDataset : public Error {
 public:
  using Error::Error;
};

/// Fine feasibility was asked of a dataset whose single-variable marginals
/// differ across contexts.
class InconsistentMarginals : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A setting context (i, j) has no trials.
class EmptyContext : public Error {
 public:
  EmptyContext(int i, int j)
      : Error("no trials for setting context (" + std::to_string(i) + "," + std::to_string(j) + ")"),
        i_(i),
        j_(j) {}
  int i() const { return i_; }
  int j() const { return j_; }

 private:
  int i_;
  int j_;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bellcp
