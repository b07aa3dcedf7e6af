#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input data that cannot even be interpreted: dangling ids, size mismatches,
// unparseable JSON.  Distinct from a well-formed structure that breaks a law.
struct MalformedInput : Error {
  using Error::Error;
};

// A well-formed value that violates an algebraic law it promised to satisfy
// (functoriality, algebra equations, factorization identities, ...).
struct LawViolation : Error {
  using Error::Error;
};

// An operation was called on arguments outside its stated precondition,
// e.g. mediating a non-commuting cone or composing maps with mismatched ends.
struct PreconditionError : Error {
  using Error::Error;
};

// An exhaustive search refused to run because an input exceeds the
// enumeration cap.  Carries the offending size so callers can report it.
struct CapExceeded : Error {
  CapExceeded(const std::string& what, long size, long cap)
      : Error(what), size(size), cap(cap) {}
  long size;
  long cap;
};

}  // namespace forge
