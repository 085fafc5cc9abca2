#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subsum {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModulus : public Error {
 public:
  using Error::Error;
};

// Thrown when a row is linearly dependent on the rows before it.
class RankDeficiency : public Error {
 public:
  explicit RankDeficiency(std::size_t row)
      : Error("rank deficiency: row " + std::to_string(row) +
              " is dependent on the preceding rows"),
        row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A lattice vector could not be written as a multiplier row.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace subsum
