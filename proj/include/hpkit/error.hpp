#pragma once

#include <stdexcept>
#include <string>

namespace hpkit {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (sequence, move string, file syntax).
// `position` is 1-based within the offending text, 0 if not applicable.
struct ParseError : Error {
  ParseError(const std::string& msg, int position = 0) : Error(msg), position(position) {}
  int position;
};

// A well-formed request with an unusable argument (unknown lattice name,
// wrong core size, empty point set, ...).
struct ArgumentError : Error {
  using Error::Error;
};

// A point that is not a member of the lattice where one is required.
struct MembershipError : ArgumentError {
  using ArgumentError::ArgumentError;
};

// A structurally invalid conformation where a valid one is required.
struct ValidationError : Error {
  using Error::Error;
};

// Request exceeds a documented size bound.
struct CapacityError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// Core database file is syntactically broken; `offset` is the byte offset
// of the first unreadable position.
struct DbFormatError : Error {
  DbFormatError(const std::string& msg, long long offset) : Error(msg), offset(offset) {}
  long long offset;
};

struct DbChecksumError : Error {
  using Error::Error;
};

// Core database parses but its content is inconsistent (e.g. a stored
// contact count does not match the stored points).
struct DbIntegrityError : Error {
  DbIntegrityError(const std::string& msg, int nh, int layer, int index)
      : Error(msg), nh(nh), layer(layer), index(index) {}
  int nh;
  int layer;
  int index;
};

}  // namespace hpkit
