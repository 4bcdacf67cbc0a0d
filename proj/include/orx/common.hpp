#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace orx {

using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched variable counts between polynomials / vectors.
struct DimensionError : Error {
  using Error::Error;
};

// Operation required an even-in-each-variable polynomial.
struct ParityError : Error {
  using Error::Error;
};

// A moment index was not covered by the moment vector.
struct CoverageError : Error {
  using Error::Error;
};

// Bad builder/solver configuration (missing simplex constraint, k too small, ...).
struct ConfigError : Error {
  using Error::Error;
};

// Requested object too large for platform integers.
struct SizeError : Error {
  using Error::Error;
};

// Malformed external input; carries a 1-based line number when known.
struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& msg, int line_) : Error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace orx
