#pragma once

#include <stdexcept>
#include <string>

namespace qboson {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested Fock level lies beyond the table/spec cap.
struct LevelCapError : Error {
  using Error::Error;
};

// Operands disagree on dimension, ladder table, grid or hbar.
struct IncompatibleError : Error {
  using Error::Error;
};

// Operation requires a deformation kind it does not support.
struct UnsupportedKindError : Error {
  using Error::Error;
};

// F(level) <= 0 (or F! vanishes): the basis transform is not invertible.
struct DegenerateDeformationError : Error {
  explicit DegenerateDeformationError(int level_, const std::string& what)
      : Error(what), level(level_) {}
  int level;
};

// Malformed file/JSON/CLI input.
struct InputError : Error {
  using Error::Error;
};

}  // namespace qboson
