#pragma once

#include <stdexcept>
#include <string>

namespace uclosed {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Duplicate members, elements outside [n], or a ground size out of range.
class InvalidFamily : public Error {
public:
  using Error::Error;
};

/// Malformed JSON or a document that does not match the expected schema.
class ParseError : public Error {
public:
  using Error::Error;
};

/// An input outside the hypothesis of the question being asked, e.g. the
/// half-element test on {∅}.
class OutOfScope : public Error {
public:
  using Error::Error;
};

/// A pair (A, F) with A not contained in F handed to an interval predicate.
class MalformedPair : public Error {
public:
  using Error::Error;
};

/// The request would leave the regime where the search is exhaustive.
class ResourceGuard : public Error {
public:
  using Error::Error;
};

class UnsupportedCase : public Error {
public:
  using Error::Error;
};

} // namespace uclosed
