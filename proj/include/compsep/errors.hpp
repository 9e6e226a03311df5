#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compsep {

// Base class for every failure raised by the library. Precondition
// violations on plain arguments (negative sizes, bad alpha) use
// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. row() is the 1-based data row, 0 for the header or
// for whole-file problems.
class ParseError : public Error {
public:
  ParseError(std::size_t row, const std::string& what)
      : Error(row == 0 ? what : "row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

class InvalidDistribution : public Error {
public:
  using Error::Error;
};

// A (Y=y, A=a) stratum with no points, so a conditional rate is undefined.
class DegenerateStratum : public Error {
public:
  DegenerateStratum(int y, int a)
      : Error("degenerate stratum: no points with (Y=" + std::to_string(y) +
              ",A=" + std::to_string(a) + ")"),
        y_(y), a_(a) {}

  int y() const noexcept { return y_; }
  int a() const noexcept { return a_; }

private:
  int y_;
  int a_;
};

// A group-pair bucket with no usable judgments.
class EmptyBucket : public Error {
public:
  EmptyBucket(int first, int second)
      : Error("empty group-pair bucket (" + std::to_string(first) + "," +
              std::to_string(second) + ")"),
        first_(first), second_(second) {}

  int first() const noexcept { return first_; }
  int second() const noexcept { return second_; }

private:
  int first_;
  int second_;
};

class SimulationAborted : public Error {
public:
  using Error::Error;
};

}  // namespace compsep
