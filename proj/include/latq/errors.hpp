#pragma once

#include <stdexcept>
#include <string>

namespace latq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact determinant of a square system is zero.
struct SingularMatrix : Error {
  using Error::Error;
};

/// Basis rows are linearly dependent (det B*B^T vanishes).
struct RankDeficient : Error {
  using Error::Error;
};

struct NotSymmetric : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

/// The exact Seysen routes disagreed. This is an implementation bug,
/// never a property of the input.
struct RouteMismatch : Error {
  using Error::Error;
};

/// A structural invariant (duality, exact division, unimodularity) failed
/// mid-computation. Also a bug trap.
struct InvariantBroken : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct GenerationFailed : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : Error("line " + std::to_string(line_) + ", col " +
              std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

}  // namespace latq
