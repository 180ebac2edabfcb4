#pragma once

#include <stdexcept>
#include <string>

namespace madmm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes that do not line up (non-square input, wrong vector length, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Non-finite data reaching a decomposition.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Rank-deficient normal equations; the constraint set has duplicated or
// contradicting rows.
class IllPosedError : public Error {
 public:
  using Error::Error;
};

// A block norm or coefficient that is zero where a strictly positive value is
// required (tuner, quartic, worst-case ratio).
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// The radical root formula hit a zero divisor.
class FormulaBreakdown : public Error {
 public:
  using Error::Error;
};

// An ADMM iterate became non-finite.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Invalid metric parameters (non-positive gamma, split out of range).
class MetricError : public Error {
 public:
  using Error::Error;
};

// Malformed text input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace madmm
