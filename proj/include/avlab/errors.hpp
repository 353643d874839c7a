#pragma once

#include <stdexcept>

namespace avlab {

/// Base class for all contract violations raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not lex as the requested object.
class MalformedText : public Error {
 public:
  using Error::Error;
};

/// Blocks that are empty, overlap, or fail to cover [n] exactly.
class NotAPartition : public Error {
 public:
  using Error::Error;
};

/// An element or vertex outside the valid ground set.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Objects whose sizes were required to agree but do not.
class SizeMismatch : public Error {
 public:
  using Error::Error;
};

/// Tuples with different numbers of coordinates.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// A coordinate or position index outside 1..d.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A hypergraph that was required to be t-uniform but is not.
class NotUniform : public Error {
 public:
  using Error::Error;
};

/// A projection index set that is not a proper subset of [t].
class BadIndexSet : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its documented domain.
class BadParameter : public Error {
 public:
  using Error::Error;
};

/// A sequence term that must be positive but is not.
class NonPositiveTerm : public Error {
 public:
  using Error::Error;
};

/// A request whose exhaustive cost exceeds the configured limit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace avlab
