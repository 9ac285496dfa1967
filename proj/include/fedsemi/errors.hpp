#pragma once

#include <stdexcept>
#include <string>

namespace fedsemi {

// Error taxonomy. ConfigError maps to CLI exit code 1, everything else to 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct ShapeError : Error {
  using Error::Error;
};

struct DataError : Error {
  using Error::Error;
};

struct NumericError : Error {
  using Error::Error;
};

struct PartitionError : Error {
  using Error::Error;
};

struct AggregationError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace fedsemi
