#pragma once

#include <stdexcept>
#include <string>

namespace defo {

/// Malformed input: bad files, bad rational strings, unknown names.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (non-MC input, mismatched contexts, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Two objects built over different truncation contexts were combined.
struct ContextMismatch : PreconditionError {
  using PreconditionError::PreconditionError;
};

/// Linear-algebra shape error.
struct DimensionMismatch : PreconditionError {
  using PreconditionError::PreconditionError;
};

/// A claimed identity failed to hold after construction. Always a bug or a broken hypothesis.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void check(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace defo
