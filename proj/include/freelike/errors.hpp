#pragma once

#include <stdexcept>
#include <string>

namespace freelike {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad index, odd coefficient, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two values over different alphabets were combined.
class RankMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Malformed textual input (words, presentation/graph/group files).
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An enumeration or construction hit its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A Dehn-based query was made on a presentation without a C'(1/6) certificate.
class Unverified : public Error {
 public:
  using Error::Error;
};

}  // namespace freelike
