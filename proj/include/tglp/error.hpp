#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tglp {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed ordinal or formula text. `position` is a byte offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position(position) {}
  std::size_t position;
};

// A modality index, world, relation or line number outside the permitted range.
struct RangeError : Error {
  using Error::Error;
};

// A structured input document (model, proof, schedule) that does not follow its schema.
struct FormatError : Error {
  using Error::Error;
};

}  // namespace tglp
